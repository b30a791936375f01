use num_complex::Complex64;

use crate::bae::{build_string, check_nc, BetheString};
use crate::error::{Error, Result};
use crate::medium::{Branch, MediumParams};
use crate::roots::{bisect, newton_polish};
use crate::stringmap::{momentum_derivative, momentum_real, rapidity_derivative, rapidity_real};

/// `N` polaritons sharing the carrier frequency `Omega`:
/// `omega_j = Omega + (i/2) Gamma (N + 1 - 2j)`, `k_j = K + (i/2) Q (N + 1 - 2j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinarySoliton {
    pub n_particles: usize,
    pub carrying_rapidity: f64,
    pub beta: f64,
    pub carrier: f64,
    pub energy: f64,
    /// `Gamma = beta / h'(Omega)`.
    pub width: f64,
    /// `K = Omega n(Omega)`.
    pub momentum: f64,
    /// `Q = beta k'(Omega) / h'(Omega)`.
    pub decay: f64,
    /// Set when the outermost imaginary part exceeds a tenth of `Omega`, where
    /// the first-order continuation is no longer trustworthy.
    pub strained_continuation: bool,
}

impl OrdinarySoliton {
    fn offsets(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n_particles as i64;
        (1..=n).map(move |j| 0.5 * (n + 1 - 2 * j) as f64)
    }

    pub fn frequencies(&self) -> Vec<Complex64> {
        self.offsets()
            .map(|m| Complex64::new(self.carrier, m * self.width))
            .collect()
    }

    pub fn momenta(&self) -> Vec<Complex64> {
        self.offsets()
            .map(|m| Complex64::new(self.momentum, m * self.decay))
            .collect()
    }

    pub fn string(&self) -> BetheString {
        build_string(self.n_particles, self.carrying_rapidity, self.beta)
            .expect("validated on construction")
    }
}

/// Solves `h(Omega) = H` on the given propagating branch without checking the
/// sign condition. Used to show why `H > 0` candidates are rejected.
pub fn ordinary_candidate(
    p: &MediumParams,
    branch: Branch,
    n: usize,
    carrying: f64,
) -> Result<OrdinarySoliton> {
    build_string(n, carrying, p.beta())?;
    let tau = p.edge_guard();
    let (lo, hi) = match branch {
        Branch::Lower => {
            let top = p.omega_perp() - 1.5 * tau;
            // with the atom on the lower branch h changes sign at omega12_bar
            let top = if p.omega12_bar() < top {
                p.omega12_bar()
            } else {
                top
            };
            (tau, top)
        }
        Branch::Upper => (
            p.omega_par() + 1.5 * tau,
            crate::bae::UPPER_WINDOW_FACTOR * p.omega_par(),
        ),
        _ => {
            return Err(Error::Regime(
                "ordinary solitons live on a propagating branch".into(),
            ))
        }
    };
    let f = |x: f64| {
        rapidity_real(p, x)
            .map(|h| h - carrying)
            .unwrap_or(f64::NAN)
    };
    let rough = bisect(f, lo, hi, 1e-14, 300).ok_or_else(|| {
        Error::NoRoot(format!(
            "h(Omega) = {carrying} has no root on the {} branch window ({lo}, {hi})",
            branch.label()
        ))
    })?;
    let fdf = |x: f64| (f(x), rapidity_derivative(p, x).unwrap_or(f64::NAN));
    let carrier = newton_polish(fdf, rough, lo, hi, 1e-15, 20);

    let hp = rapidity_derivative(p, carrier)?;
    let width = p.beta() / hp;
    let decay = p.beta() * momentum_derivative(p, carrier)? / hp;
    let spread = 0.5 * (n as f64 - 1.0) * width.abs();
    Ok(OrdinarySoliton {
        n_particles: n,
        carrying_rapidity: carrying,
        beta: p.beta(),
        carrier,
        energy: n as f64 * carrier,
        width,
        momentum: momentum_real(p, carrier)?,
        decay,
        strained_continuation: spread > 0.1 * carrier,
    })
}

/// Bound complex of `N` lower-branch polaritons with carrying rapidity `H < 0`.
pub fn ordinary_soliton(p: &MediumParams, n: usize, carrying: f64) -> Result<OrdinarySoliton> {
    if p.classify(p.omega12_bar()) == Branch::Upper {
        return Err(Error::UnsupportedRegime(
            "omega12 above the gap admits interbranch and composite solitons, \
             which have no closed-form construction"
                .into(),
        ));
    }
    if !(carrying < 0.0) {
        return Err(Error::Regime(format!(
            "ordinary solitons need H < 0 (a lower-branch root of h = H), got H = {carrying}"
        )));
    }
    let soliton = ordinary_candidate(p, Branch::Lower, n, carrying)?;
    let nc = check_nc(&soliton.string(), &soliton.momenta())?;
    if !nc.pass {
        return Err(Error::Regime(format!(
            "sign condition fails for particles {:?}",
            nc.offending
        )));
    }
    Ok(soliton)
}
