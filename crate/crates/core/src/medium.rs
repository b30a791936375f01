//! Dielectric model of the polariton medium.
//!
//! The permittivity has a single resonance,
//!
//! ```text
//! eps(w) = (w^2 - W_par^2) / (w^2 - W_perp^2)
//! ```
//!
//! which is negative on the gap `G = (W_perp, W_par)` and positive on the
//! lower branch `(0, W_perp)` and upper branch `(W_par, inf)`. All
//! frequencies are stored in units of the lower gap edge, so `omega_perp`
//! is always 1 after construction.

use crate::error::{Error, Result};

/// Default relative width of the guard band around either gap edge.
pub const DEFAULT_EDGE_GUARD: f64 = 1e-6;

/// Which part of the positive frequency axis a real frequency belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Lower polariton branch, `0 < w < W_perp`.
    Lower,
    /// Inside the frequency gap.
    Gap,
    /// Upper polariton branch, `w > W_par`.
    Upper,
    /// Within the edge guard of `W_perp` or `W_par`.
    Edge,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Lower => "lower",
            Branch::Gap => "gap",
            Branch::Upper => "upper",
            Branch::Edge => "edge",
        }
    }
}

/// Physical configuration of the medium and the impurity atom.
///
/// Constructed from absolute frequencies and normalized so that the lower
/// gap edge equals one. The original scale is kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    omega_par: f64,
    omega12: f64,
    omega12_bar: f64,
    beta: f64,
    length: Option<f64>,
    edge_guard_rel: f64,
    scale: f64,
}

impl MediumParams {
    /// Builds a normalized configuration from absolute gap edges, atomic
    /// frequency and dimensionless coupling `beta = gamma / omega12`.
    pub fn new(omega_perp: f64, omega_par: f64, omega12: f64, beta: f64) -> Result<Self> {
        let finite = [omega_perp, omega_par, omega12, beta]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(omega_perp > 0.0 && omega_perp < omega_par) {
            return Err(Error::InvalidParams(format!(
                "need 0 < omega_perp < omega_par, got {omega_perp}, {omega_par}"
            )));
        }
        if omega12 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega12 must be positive, got {omega12}"
            )));
        }
        if beta <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "beta must be positive, got {beta}"
            )));
        }
        let scale = omega_perp;
        Ok(Self {
            omega_par: omega_par / scale,
            omega12: omega12 / scale,
            omega12_bar: omega12 / scale,
            beta,
            length: None,
            edge_guard_rel: DEFAULT_EDGE_GUARD,
            scale,
        })
    }

    /// `W_perp = 1, W_par = 1.2, omega12 = 1.1, beta = 1e-3`.
    pub fn canonical() -> Self {
        Self::new(1.0, 1.2, 1.1, 1e-3).expect("canonical parameters are valid")
    }

    /// Sets the radius of the quantization sphere, in absolute units
    /// (inverse frequency, `c = 1`).
    pub fn with_length(mut self, length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidParams(format!(
                "L must be positive, got {length}"
            )));
        }
        self.length = Some(length * self.scale);
        Ok(self)
    }

    /// Overrides the Lamb-shifted transition frequency (absolute units).
    /// By default it equals `omega12`.
    pub fn with_lamb_shifted(mut self, omega12_bar: f64) -> Result<Self> {
        if !(omega12_bar.is_finite() && omega12_bar > 0.0) {
            return Err(Error::InvalidParams(format!(
                "shifted omega12 must be positive, got {omega12_bar}"
            )));
        }
        self.omega12_bar = omega12_bar / self.scale;
        Ok(self)
    }

    /// Relative edge guard; the absolute guard is `rel * (W_par - W_perp)`.
    pub fn with_edge_guard(mut self, rel: f64) -> Result<Self> {
        if !(rel.is_finite() && rel > 0.0 && rel < 0.5) {
            return Err(Error::InvalidParams(format!(
                "edge guard must lie in (0, 0.5), got {rel}"
            )));
        }
        self.edge_guard_rel = rel;
        Ok(self)
    }

    pub fn omega_perp(&self) -> f64 {
        1.0
    }

    pub fn omega_par(&self) -> f64 {
        self.omega_par
    }

    pub fn omega12(&self) -> f64 {
        self.omega12
    }

    /// Lamb-shifted transition frequency; the zero of the rapidity map.
    pub fn omega12_bar(&self) -> f64 {
        self.omega12_bar
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Normalized PBC radius, if set.
    pub fn length(&self) -> Option<f64> {
        self.length
    }

    pub fn edge_guard_rel(&self) -> f64 {
        self.edge_guard_rel
    }

    /// Absolute edge guard `tau_edge` in normalized units.
    pub fn edge_guard(&self) -> f64 {
        self.edge_guard_rel * (self.omega_par - self.omega_perp())
    }

    /// Absolute value of `W_perp`; multiply normalized frequencies by this.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Non-fatal diagnostics about the configuration.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.beta > 0.1 {
            out.push(format!(
                "beta = {} is not small; the string-to-soliton maps assume beta << 1",
                self.beta
            ));
        }
        if self.classify(self.omega12) != Branch::Gap {
            out.push(format!(
                "omega12 = {} is not inside the gap; gap-sector operations are unavailable",
                self.omega12
            ));
        }
        out
    }

    /// Checks the atom sits inside the gap, as every gap-sector operation needs.
    pub fn require_atom_in_gap(&self) -> Result<()> {
        match self.classify(self.omega12_bar) {
            Branch::Gap => Ok(()),
            Branch::Upper => Err(Error::UnsupportedRegime(
                "omega12 above the gap: interbranch attraction and composite solitons \
                 have no closed-form construction"
                    .into(),
            )),
            _ => Err(Error::InvalidParams(format!(
                "gap-sector operations need omega_perp < omega12 < omega_par, got omega12 = {}",
                self.omega12_bar
            ))),
        }
    }

    pub fn classify(&self, omega: f64) -> Branch {
        let tau = self.edge_guard();
        let (lo, hi) = (self.omega_perp(), self.omega_par);
        if (omega - lo).abs() < tau || (omega - hi).abs() < tau {
            Branch::Edge
        } else if omega < lo {
            Branch::Lower
        } else if omega < hi {
            Branch::Gap
        } else {
            Branch::Upper
        }
    }

    fn check_positive(op: &'static str, omega: f64) -> Result<()> {
        if omega > 0.0 && omega.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(op, omega, "frequency must be positive"))
        }
    }

    fn check_pole(&self, omega: f64) -> Result<()> {
        if (omega - self.omega_perp()).abs() < self.edge_guard() {
            Err(Error::Pole { omega })
        } else {
            Ok(())
        }
    }

    /// Raw closed form, no guards.
    pub(crate) fn eps(&self, omega: f64) -> f64 {
        let w2 = omega * omega;
        (w2 - self.omega_par * self.omega_par) / (w2 - 1.0)
    }

    /// `d eps / d omega = 2 w (W_par^2 - W_perp^2) / (w^2 - W_perp^2)^2`.
    pub(crate) fn eps_prime(&self, omega: f64) -> f64 {
        let d = omega * omega - 1.0;
        2.0 * omega * (self.omega_par * self.omega_par - 1.0) / (d * d)
    }

    /// Logarithmic derivative `eps' / eps`, written without the pole.
    pub(crate) fn eps_log_prime(&self, omega: f64) -> f64 {
        let w2 = omega * omega;
        2.0 * omega * (1.0 / (w2 - self.omega_par * self.omega_par) - 1.0 / (w2 - 1.0))
    }

    pub fn permittivity(&self, omega: f64) -> Result<f64> {
        Self::check_positive("permittivity", omega)?;
        self.check_pole(omega)?;
        Ok(self.eps(omega))
    }

    pub fn permittivity_derivative(&self, omega: f64) -> Result<f64> {
        Self::check_positive("permittivity_derivative", omega)?;
        self.check_pole(omega)?;
        Ok(self.eps_prime(omega))
    }

    fn require_outside_gap(&self, op: &'static str, omega: f64) -> Result<()> {
        Self::check_positive(op, omega)?;
        match self.classify(omega) {
            Branch::Lower | Branch::Upper => Ok(()),
            Branch::Gap => Err(Error::domain(
                op,
                omega,
                "inside the gap; use the gap decay index",
            )),
            Branch::Edge => {
                self.check_pole(omega)?;
                Err(Error::domain(
                    op,
                    omega,
                    "within the edge guard of omega_par",
                ))
            }
        }
    }

    pub(crate) fn require_gap(&self, op: &'static str, xi: f64) -> Result<()> {
        Self::check_positive(op, xi)?;
        match self.classify(xi) {
            Branch::Gap => Ok(()),
            Branch::Edge => Err(Error::domain(op, xi, "within the edge guard of the gap")),
            _ => Err(Error::domain(op, xi, "outside the open gap")),
        }
    }

    /// `n = sqrt(eps)` on the propagating branches.
    pub fn refractive_index(&self, omega: f64) -> Result<f64> {
        self.require_outside_gap("refractive_index", omega)?;
        Ok(self.eps(omega).sqrt())
    }

    /// `n' = eps' / (2 n)`.
    pub fn refractive_index_derivative(&self, omega: f64) -> Result<f64> {
        self.require_outside_gap("refractive_index_derivative", omega)?;
        Ok(self.eps_prime(omega) / (2.0 * self.eps(omega).sqrt()))
    }

    /// `nu = sqrt(|eps|)` inside the gap, where `n(xi +/- i0) = +/- i nu`.
    pub fn gap_decay_index(&self, xi: f64) -> Result<f64> {
        self.require_gap("gap_decay_index", xi)?;
        Ok((-self.eps(xi)).sqrt())
    }

    /// `nu' = -eps' / (2 nu)`; negative across the whole gap.
    pub fn gap_decay_index_derivative(&self, xi: f64) -> Result<f64> {
        self.require_gap("gap_decay_index_derivative", xi)?;
        Ok(-self.eps_prime(xi) / (2.0 * (-self.eps(xi)).sqrt()))
    }

    /// Evanescent wavenumber `kappa = xi nu(xi)`; its inverse is the
    /// classical penetration length at gap frequency `xi`.
    pub fn kappa(&self, xi: f64) -> Result<f64> {
        Ok(xi * self.gap_decay_index(xi)?)
    }

    /// `kappa' = nu + xi nu'`.
    pub fn kappa_prime(&self, xi: f64) -> Result<f64> {
        let nu = self.gap_decay_index(xi)?;
        Ok(nu - xi * self.eps_prime(xi) / (2.0 * nu))
    }
}
