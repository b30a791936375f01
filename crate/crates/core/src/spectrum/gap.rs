//! Gap pairs and gap solitons.
//!
//! An even string `N = 2l` with `H >= 0` maps to `l` pairs of conjugate gap
//! frequencies `xi_j +/- i eta_j`. Three approximation orders are offered and
//! always labelled with [`Mode`]:
//!
//! * `Linear`: `phi(xi) ~ a (xi - c)`, giving
//!   `xi_j = c - (beta/a)(l + 1/2 - j)` and `eta = H/a`.
//! * `Corrected`: quadratic terms in `xi - c` and `eta`, giving the band
//!   half-width `Delta_l` and effective mass `m_l`.
//! * `Exact`: each pair solves `h(xi_j + i eta_j) = H + i beta (l - j + 1/2)`
//!   with the full continuation of `h` into the gap.

use num_complex::Complex64;

use crate::bae::{build_string, check_nc, BetheString};
use crate::error::{Error, Result};
use crate::medium::MediumParams;
use crate::stringmap::{
    gap_sheet_momentum, gap_sheet_rapidity, linearize_with_tolerance, Linearization,
    DEFAULT_VALIDITY_TOLERANCE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Linear,
    Corrected,
    Exact,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Linear => "linear",
            Mode::Corrected => "corrected",
            Mode::Exact => "exact",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "linear" => Some(Mode::Linear),
            "corrected" => Some(Mode::Corrected),
            "exact" => Some(Mode::Exact),
            _ => None,
        }
    }
}

/// Tolerances for the gap sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Exact mode converges when both residual components are below
    /// `exact_tol * beta`.
    pub exact_tol: f64,
    pub max_iter: usize,
    /// Relative error bounding the trusted radius of the quadratic model.
    pub validity_tolerance: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            exact_tol: 1e-12,
            max_iter: 50,
            validity_tolerance: DEFAULT_VALIDITY_TOLERANCE,
        }
    }
}

/// One conjugate pair `xi +/- i eta` with momenta `q +/- i kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPair {
    pub xi: f64,
    pub eta: f64,
    pub q: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapSolitonState {
    pub n_pairs: usize,
    pub carrying_rapidity: f64,
    pub beta: f64,
    pub mode: Mode,
    /// Pair `j = 1..l`, ordered from the lowest frequency up.
    pub pairs: Vec<GapPair>,
    pub energy_per_particle: f64,
    pub total_energy: f64,
    pub band_halfwidth: f64,
    pub effective_mass: f64,
    /// `1 / kappa(xi_1)`.
    pub size: f64,
    pub momentum_per_particle: f64,
}

impl GapSolitonState {
    /// The `2l` frequencies in string order: upper members `j = 1..l`, then
    /// their conjugates in reverse.
    pub fn frequencies(&self) -> Vec<Complex64> {
        let up = self.pairs.iter().map(|p| Complex64::new(p.xi, p.eta));
        let down = self
            .pairs
            .iter()
            .rev()
            .map(|p| Complex64::new(p.xi, -p.eta));
        up.chain(down).collect()
    }

    pub fn momenta(&self) -> Vec<Complex64> {
        let up = self.pairs.iter().map(|p| Complex64::new(p.q, p.kappa));
        let down = self
            .pairs
            .iter()
            .rev()
            .map(|p| Complex64::new(p.q, -p.kappa));
        up.chain(down).collect()
    }

    pub fn string(&self) -> BetheString {
        build_string(2 * self.n_pairs, self.carrying_rapidity, self.beta)
            .expect("validated on construction")
    }
}

/// Gap-sector calculator: the medium, its expansion about the atom and the
/// solver settings.
#[derive(Debug, Clone, Copy)]
pub struct GapSector {
    params: MediumParams,
    lin: Linearization,
    settings: SolverSettings,
}

impl GapSector {
    pub fn new(params: &MediumParams) -> Result<Self> {
        Self::with_settings(params, SolverSettings::default())
    }

    pub fn with_settings(params: &MediumParams, settings: SolverSettings) -> Result<Self> {
        let lin = linearize_with_tolerance(params, settings.validity_tolerance)?;
        Ok(Self {
            params: *params,
            lin,
            settings,
        })
    }

    pub fn params(&self) -> &MediumParams {
        &self.params
    }

    pub fn linearization(&self) -> &Linearization {
        &self.lin
    }

    pub fn settings(&self) -> &SolverSettings {
        &self.settings
    }

    fn spacing(&self) -> f64 {
        self.lin.spacing(self.params.beta())
    }

    fn floor(&self) -> f64 {
        self.params.omega_perp() + self.params.edge_guard()
    }

    /// Largest `l` whose lowest linear frequency clears the edge guard.
    pub fn l_max(&self) -> usize {
        let room = self.lin.center - self.floor();
        let mut l = ((room / self.spacing()) + 0.5).floor().max(0.0) as usize;
        while l > 0 && self.linear_frequency(l, 1) <= self.floor() {
            l -= 1;
        }
        while self.linear_frequency(l + 1, 1) > self.floor() {
            l += 1;
        }
        l
    }

    /// Largest `l` for which a pinned soliton stays inside the window.
    pub fn pinned_l_max(&self) -> usize {
        let room = self.lin.center - self.floor();
        let mut l = (room / self.spacing()).floor().max(0.0) as usize;
        while l > 0 && self.pinned_frequency(l, 1) <= self.floor() {
            l -= 1;
        }
        while self.pinned_frequency(l + 1, 1) > self.floor() {
            l += 1;
        }
        l
    }

    fn check_l(&self, l: usize) -> Result<()> {
        if l == 0 {
            return Err(Error::InvalidParams("a gap soliton needs l >= 1".into()));
        }
        let l_max = self.l_max();
        if l > l_max {
            return Err(Error::LmaxExceeded { l, l_max });
        }
        Ok(())
    }

    /// `xi_j^(0) = c - (beta/a)(l + 1/2 - j)`.
    pub fn linear_frequency(&self, l: usize, j: usize) -> f64 {
        self.lin.center - self.spacing() * (l as f64 + 0.5 - j as f64)
    }

    /// `xi_j^(p) = c - (beta/a)(l - j + 1)`, `j = 1..l`; `j = 0` is the atom.
    pub fn pinned_frequency(&self, l: usize, j: usize) -> f64 {
        if j == 0 {
            self.lin.center
        } else {
            self.lin.center - self.spacing() * (l + 1 - j) as f64
        }
    }

    /// `E^(0)_l = 2 c l - (beta/a) l^2`.
    pub fn linear_energy(&self, l: usize) -> f64 {
        let l = l as f64;
        2.0 * self.lin.center * l - self.spacing() * l * l
    }

    /// `E^(p)_l = c (2l + 1) - (beta/a) l (l + 1)`.
    pub fn pinned_energy(&self, l: usize) -> f64 {
        let l = l as f64;
        self.lin.center * (2.0 * l + 1.0) - self.spacing() * l * (l + 1.0)
    }

    /// `Delta_l = b beta^2 (4 l^2 - 1) / (12 a^3)`.
    pub fn band_halfwidth(&self, l: usize) -> f64 {
        let (a, b, beta) = (self.lin.a, self.lin.b, self.params.beta());
        let l = l as f64;
        b * beta * beta * (4.0 * l * l - 1.0) / (12.0 * a * a * a)
    }

    fn kappa_prime_sum(&self, l: usize) -> Result<f64> {
        (1..=l)
            .map(|j| Ok(self.params.kappa_prime(self.linear_frequency(l, j))?.abs()))
            .sum()
    }

    /// `m_l = a / (2 b l^2) (sum_j |kappa'(xi_j^(0))|)^2`.
    pub fn effective_mass(&self, l: usize) -> Result<f64> {
        let s = self.kappa_prime_sum(l)?;
        let lf = l as f64;
        Ok(self.lin.a / (2.0 * self.lin.b * lf * lf) * s * s)
    }

    /// `U_d = 2 (beta/a) l1 (l - l1)`; `l1 = 0` or `l1 = l` is a degenerate
    /// split with zero cost.
    pub fn dissociation_energy(&self, l: usize, l1: usize) -> Result<f64> {
        if l1 > l {
            return Err(Error::InvalidParams(format!(
                "cannot split {l1} pairs off a soliton of {l}"
            )));
        }
        if l > 0 {
            self.check_l(l)?;
        }
        Ok(2.0 * self.spacing() * (l1 * (l - l1)) as f64)
    }

    fn check_carrying(&self, carrying: f64) -> Result<()> {
        if !carrying.is_finite() || carrying < 0.0 {
            return Err(Error::Regime(format!(
                "gap states need H >= 0; H = {carrying} maps to negative particle momenta \
                 and violates the sign condition"
            )));
        }
        Ok(())
    }

    fn check_window(&self, xi: f64) -> Result<()> {
        let (lo, hi) = (self.floor(), self.lin.center);
        if xi > lo && xi <= hi {
            Ok(())
        } else {
            Err(Error::WindowViolation { xi, lo, hi })
        }
    }

    fn finish(
        &self,
        l: usize,
        carrying: f64,
        mode: Mode,
        pairs: Vec<GapPair>,
        energy_per_particle: f64,
    ) -> Result<GapSolitonState> {
        for pair in &pairs {
            self.check_window(pair.xi)?;
        }
        let momentum_per_particle = pairs.iter().map(|p| p.q).sum::<f64>() / l as f64;
        let state = GapSolitonState {
            n_pairs: l,
            carrying_rapidity: carrying,
            beta: self.params.beta(),
            mode,
            size: 1.0 / pairs[0].kappa,
            pairs,
            energy_per_particle,
            total_energy: 2.0 * l as f64 * energy_per_particle,
            band_halfwidth: self.band_halfwidth(l),
            effective_mass: self.effective_mass(l)?,
            momentum_per_particle,
        };
        let nc = check_nc(&state.string(), &state.momenta())?;
        if !nc.pass {
            return Err(Error::Regime(format!(
                "sign condition fails for particles {:?}",
                nc.offending
            )));
        }
        Ok(state)
    }

    pub fn linear(&self, l: usize, carrying: f64) -> Result<GapSolitonState> {
        self.check_l(l)?;
        self.check_carrying(carrying)?;
        let eta = carrying / self.lin.a;
        let pairs = (1..=l)
            .map(|j| {
                let xi = self.linear_frequency(l, j);
                Ok(GapPair {
                    xi,
                    eta,
                    q: -eta * self.params.kappa_prime(xi)?,
                    kappa: self.params.kappa(xi)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let eps0 = self.lin.center - 0.5 * self.spacing() * l as f64;
        self.finish(l, carrying, Mode::Linear, pairs, eps0)
    }

    /// Quadratic corrections without the validity-radius check; used as the
    /// starting point of the exact solve.
    fn corrected_pairs(&self, l: usize, eta: f64) -> Result<Vec<GapPair>> {
        let ratio = self.lin.b / self.lin.a;
        (1..=l)
            .map(|j| {
                let xi0 = self.linear_frequency(l, j);
                let d0 = xi0 - self.lin.center;
                let xi = xi0 - ratio * d0 * d0 + ratio * eta * eta;
                Ok(GapPair {
                    xi,
                    eta,
                    q: -eta * self.params.kappa_prime(xi0)?,
                    kappa: self.params.kappa(xi)?,
                })
            })
            .collect()
    }

    pub fn corrected(&self, l: usize, carrying: f64) -> Result<GapSolitonState> {
        self.check_l(l)?;
        self.check_carrying(carrying)?;
        let eta = carrying / self.lin.a;
        if eta > self.lin.valid_radius {
            return Err(Error::Validity {
                offset: eta,
                valid_radius: self.lin.valid_radius,
            });
        }
        let pairs = self.corrected_pairs(l, eta)?;
        for pair in &pairs {
            let offset = (pair.xi - self.lin.center).abs();
            if offset > self.lin.valid_radius {
                return Err(Error::Validity {
                    offset,
                    valid_radius: self.lin.valid_radius,
                });
            }
        }
        let q = pairs.iter().map(|p| p.q).sum::<f64>() / l as f64;
        let eps0 = self.lin.center - 0.5 * self.spacing() * l as f64;
        let eps = eps0 - self.band_halfwidth(l) + q * q / (2.0 * self.effective_mass(l)?);
        self.finish(l, carrying, Mode::Corrected, pairs, eps)
    }

    /// Solves `h(w) = target` for one pair by damped Newton on the upper
    /// sheet, in the offset variable `delta = w - c`.
    fn solve_pair(&self, pair: usize, target: Complex64, guess: Complex64) -> Result<Complex64> {
        let p = &self.params;
        let tol = self.settings.exact_tol * p.beta();
        let lo = self.floor();
        let hi = p.omega_par() - p.edge_guard();
        let c = self.lin.center;
        let inside = |d: Complex64| d.re + c > lo && d.re + c < hi;

        let mut delta = guess;
        let (h0, mut dh) = gap_sheet_rapidity(p, delta, 1.0);
        let mut g = h0 - target;
        for iteration in 0..=self.settings.max_iter {
            if g.re.abs() < tol && g.im.abs() < tol {
                return Ok(delta);
            }
            if iteration == self.settings.max_iter {
                break;
            }
            let step = -g / dh;
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..40 {
                let cand = delta + step * t;
                if inside(cand) {
                    let (hc, dhc) = gap_sheet_rapidity(p, cand, 1.0);
                    let gc = hc - target;
                    if gc.norm() <= g.norm() {
                        delta = cand;
                        dh = dhc;
                        g = gc;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        Err(Error::NonConvergence {
            pair,
            iterations: self.settings.max_iter,
            xi: delta.re + c,
            eta: delta.im,
            residual_re: g.re,
            residual_im: g.im,
        })
    }

    pub fn exact(&self, l: usize, carrying: f64) -> Result<GapSolitonState> {
        self.check_l(l)?;
        self.check_carrying(carrying)?;
        let p = &self.params;
        let eta0 = carrying / self.lin.a;
        let seeds = self.corrected_pairs(l, eta0)?;
        let c = self.lin.center;
        let mut pairs = Vec::with_capacity(l);
        for (idx, seed) in seeds.iter().enumerate() {
            let j = idx + 1;
            let target = Complex64::new(carrying, p.beta() * (l as f64 - j as f64 + 0.5));
            let delta = self.solve_pair(j, target, Complex64::new(seed.xi - c, eta0))?;
            let w = Complex64::new(c + delta.re, delta.im);
            let k = gap_sheet_momentum(p, w, 1.0);
            pairs.push(GapPair {
                xi: w.re,
                eta: w.im,
                q: k.re,
                kappa: k.im,
            });
        }
        let eps = pairs.iter().map(|p| p.xi).sum::<f64>() / l as f64;
        self.finish(l, carrying, Mode::Exact, pairs, eps)
    }

    pub fn state(&self, l: usize, carrying: f64, mode: Mode) -> Result<GapSolitonState> {
        match mode {
            Mode::Linear => self.linear(l, carrying),
            Mode::Corrected => self.corrected(l, carrying),
            Mode::Exact => self.exact(l, carrying),
        }
    }
}

pub fn gap_soliton(
    p: &MediumParams,
    l: usize,
    carrying: f64,
    mode: Mode,
) -> Result<GapSolitonState> {
    GapSector::new(p)?.state(l, carrying, mode)
}

/// Two correlated gap excitations, `xi = c - beta/(2a)`, `eta = H/a`.
pub fn gap_pair(p: &MediumParams, carrying: f64) -> Result<GapSolitonState> {
    if !(carrying > 0.0) {
        return Err(Error::Regime(format!(
            "a propagating gap pair needs H > 0, got H = {carrying}"
        )));
    }
    GapSector::new(p)?.linear(1, carrying)
}

/// Motionless gap soliton of `l` pairs in the linear approximation.
pub fn gap_soliton_linear(p: &MediumParams, l: usize) -> Result<GapSolitonState> {
    GapSector::new(p)?.linear(l, 0.0)
}

pub fn gap_soliton_corrected(p: &MediumParams, l: usize, carrying: f64) -> Result<GapSolitonState> {
    GapSector::new(p)?.corrected(l, carrying)
}

pub fn gap_soliton_exact(p: &MediumParams, l: usize, carrying: f64) -> Result<GapSolitonState> {
    GapSector::new(p)?.exact(l, carrying)
}

pub fn dissociation_energy(p: &MediumParams, l: usize, l1: usize) -> Result<f64> {
    GapSector::new(p)?.dissociation_energy(l, l1)
}
