//! Bethe ansatz equations: strings, the sign condition, residuals at finite
//! radius and the real one-particle quantization.
//!
//! With the product taken over all `l` (the `l = j` factor is `-1`), the
//! equations read
//!
//! ```text
//! e^{i k_j L} (h_j - i beta/2) / (h_j + i beta/2) = - prod_l (h_j - h_l - i beta) / (h_j - h_l + i beta)
//! ```
//!
//! and the residual of particle `j` is `lhs + prod`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::medium::{Branch, MediumParams};
use crate::roots::{bisect, newton_polish};
use crate::stringmap::{
    momentum_derivative, momentum_real, rapidity_complex, rapidity_derivative, rapidity_on_side,
    rapidity_real,
};

/// Factors closer than this to zero are treated as exact string zeros/poles.
pub const STRING_EXACT_TOL: f64 = 1e-12;

/// The upper branch is searched up to this multiple of `omega_par`.
pub const UPPER_WINDOW_FACTOR: f64 = 10.0;

/// `N` rapidities `h_j = H + i (beta/2)(N + 1 - 2j)`, `j = 1..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BetheString {
    beta: f64,
    carrying: f64,
    rapidities: Vec<Complex64>,
}

pub fn build_string(n: usize, carrying: f64, beta: f64) -> Result<BetheString> {
    if n == 0 {
        return Err(Error::InvalidParams("a string needs N >= 1".into()));
    }
    if !(beta > 0.0 && beta.is_finite() && carrying.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "string needs beta > 0 and finite H, got beta = {beta}, H = {carrying}"
        )));
    }
    let rapidities = (1..=n)
        .map(|j| {
            let m = n as i64 + 1 - 2 * j as i64;
            Complex64::new(carrying, 0.5 * beta * m as f64)
        })
        .collect();
    Ok(BetheString {
        beta,
        carrying,
        rapidities,
    })
}

impl BetheString {
    /// Wraps an arbitrary rapidity list, e.g. a deformed string. The
    /// carrying rapidity is taken as the mean real part.
    pub fn from_rapidities(beta: f64, rapidities: Vec<Complex64>) -> Result<Self> {
        if rapidities.is_empty() || !(beta > 0.0) {
            return Err(Error::InvalidParams(
                "need at least one rapidity and beta > 0".into(),
            ));
        }
        let carrying = rapidities.iter().map(|h| h.re).sum::<f64>() / rapidities.len() as f64;
        Ok(Self {
            beta,
            carrying,
            rapidities,
        })
    }

    pub fn n_particles(&self) -> usize {
        self.rapidities.len()
    }

    pub fn carrying_rapidity(&self) -> f64 {
        self.carrying
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rapidities(&self) -> &[Complex64] {
        &self.rapidities
    }
}

/// Outcome of the sign condition `sgn Im h_j = sgn Im k_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct NcReport {
    /// Per particle: condition holds (exempt particles count as holding).
    pub flags: Vec<bool>,
    /// Per particle: real rapidity, no condition imposed.
    pub exempt: Vec<bool>,
    pub pass: bool,
    pub offending: Vec<usize>,
}

pub fn check_nc(string: &BetheString, momenta: &[Complex64]) -> Result<NcReport> {
    if momenta.len() != string.n_particles() {
        return Err(Error::LengthMismatch(format!(
            "{} momenta for a string of {}",
            momenta.len(),
            string.n_particles()
        )));
    }
    let mut flags = Vec::with_capacity(momenta.len());
    let mut exempt = Vec::with_capacity(momenta.len());
    for (h, k) in string.rapidities.iter().zip(momenta) {
        let free = h.im == 0.0;
        exempt.push(free);
        flags.push(free || (k.im != 0.0 && h.im.signum() == k.im.signum()));
    }
    let offending: Vec<usize> = flags
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i)
        .collect();
    Ok(NcReport {
        pass: offending.is_empty(),
        flags,
        exempt,
        offending,
    })
}

/// A complex number stored as `(ln |z|, arg z)`, so that magnitudes like
/// `e^{-kappa L}` survive far below the `f64` underflow threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub ln_abs: f64,
    pub arg: f64,
}

impl LogComplex {
    pub const ZERO: Self = Self {
        ln_abs: f64::NEG_INFINITY,
        arg: 0.0,
    };

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            Self::ZERO
        } else {
            Self {
                ln_abs: z.norm().ln(),
                arg: z.arg(),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }

    /// Underflows to zero when `ln_abs` is below the `f64` range.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.ln_abs.exp(), self.arg)
    }

    pub fn abs(self) -> f64 {
        self.ln_abs.exp()
    }
}

impl std::ops::Add for LogComplex {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let m = self.ln_abs.max(other.ln_abs);
        let z = Complex64::from_polar((self.ln_abs - m).exp(), self.arg)
            + Complex64::from_polar((other.ln_abs - m).exp(), other.arg);
        let inner = Self::from_complex(z);
        if inner.is_zero() {
            return Self::ZERO;
        }
        Self {
            ln_abs: m + inner.ln_abs,
            arg: inner.arg,
        }
    }
}

/// Per-particle residuals of the Bethe equations plus the consistency of the
/// supplied frequencies with the string.
#[derive(Debug, Clone, PartialEq)]
pub struct BaeResidual {
    pub equations: Vec<LogComplex>,
    /// `max_j |h(omega_j) - h_j| / max(1, |h_j|)`: absolute for ordinary
    /// rapidities, relative where `h` blows up near `omega = 0`.
    pub mapping_defect: f64,
}

impl BaeResidual {
    pub fn max_ln_abs(&self) -> f64 {
        self.equations
            .iter()
            .map(|r| r.ln_abs)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest of the equation residuals and the mapping defect.
    pub fn max_abs(&self) -> f64 {
        self.max_ln_abs().exp().max(self.mapping_defect)
    }
}

/// Residuals of the Bethe equations at the finite radius stored in `p`.
///
/// Each equation is written in the orientation where its exponential decays
/// (conjugate-inverted when `Im k_j < 0`). Within an exact string, adjacent
/// members produce a vanishing factor and possibly a vanishing denominator;
/// these are matched and the product takes its string-limit value zero. A
/// vanishing denominator with no zero to match, or a factor that is small but
/// not exactly singular, is reported as [`Error::UnmatchedPole`].
pub fn bae_residual(
    p: &MediumParams,
    string: &BetheString,
    momenta: &[Complex64],
    omega: &[Complex64],
) -> Result<BaeResidual> {
    let n = string.n_particles();
    if momenta.len() != n || omega.len() != n {
        return Err(Error::LengthMismatch(format!(
            "string of {n} with {} momenta and {} frequencies",
            momenta.len(),
            omega.len()
        )));
    }
    let length = p
        .length()
        .ok_or_else(|| Error::InvalidParams("bae_residual needs a finite L".into()))?;
    let beta = string.beta;
    let ib = Complex64::new(0.0, beta);
    let half = Complex64::new(0.0, 0.5 * beta);
    let near = 1e-6 * beta;
    let hs = &string.rapidities;

    let mut equations = Vec::with_capacity(n);
    for j in 0..n {
        let k = momenta[j];
        let sigma = if k.im < 0.0 { -1.0 } else { 1.0 };
        let mut zeros = 0usize;
        let mut poles = 0usize;
        let mut product = Complex64::new(-1.0, 0.0); // self factor
        for l in (0..n).filter(|&l| l != j) {
            let d = hs[j] - hs[l];
            let num = d - ib * sigma;
            let den = d + ib * sigma;
            for (v, count) in [(num.norm(), &mut zeros), (den.norm(), &mut poles)] {
                if v <= STRING_EXACT_TOL {
                    *count += 1;
                } else if v < near {
                    return Err(Error::UnmatchedPole {
                        index: j,
                        deviation: v,
                    });
                }
            }
            if num.norm() > STRING_EXACT_TOL && den.norm() > STRING_EXACT_TOL {
                product *= num / den;
            }
        }
        if poles > zeros {
            return Err(Error::UnmatchedPole {
                index: j,
                deviation: 0.0,
            });
        }
        let product = if zeros > 0 {
            LogComplex::ZERO
        } else {
            LogComplex::from_complex(product)
        };
        let (rn, rd) = if sigma > 0.0 {
            (hs[j] - half, hs[j] + half)
        } else {
            (hs[j] + half, hs[j] - half)
        };
        let ratio = LogComplex::from_complex(rn).ln_abs - LogComplex::from_complex(rd).ln_abs;
        let lhs = if rn.norm() == 0.0 {
            LogComplex::ZERO
        } else {
            LogComplex {
                ln_abs: -sigma * k.im * length + ratio,
                arg: (sigma * k.re * length + rn.arg() - rd.arg()).rem_euclid(TAU),
            }
        };
        equations.push(lhs + product);
    }

    let mut mapping_defect: f64 = 0.0;
    for (h, w) in hs.iter().zip(omega) {
        let side = if h.im < 0.0 { -1.0 } else { 1.0 };
        let computed = rapidity_on_side(p, *w, side)?;
        mapping_defect = mapping_defect.max((computed - h).norm() / h.norm().max(1.0));
    }
    Ok(BaeResidual {
        equations,
        mapping_defect,
    })
}

/// Phase of `(h - i beta/2) / (h + i beta/2)`, continuous in real `h`,
/// taking values in `(-2 pi, 0)`.
pub fn scattering_phase(h: f64, beta: f64) -> f64 {
    -2.0 * (0.5 * beta).atan2(h)
}

fn require_length(p: &MediumParams) -> Result<f64> {
    p.length()
        .ok_or_else(|| Error::InvalidParams("one-particle quantization needs a finite L".into()))
}

/// `Phi(lambda) = k(lambda) L + theta(h(lambda))`. One-particle roots sit at
/// `Phi = 2 pi m`.
pub fn quantization_phase(p: &MediumParams, lambda: f64) -> Result<f64> {
    let length = require_length(p)?;
    Ok(momentum_real(p, lambda)? * length + scattering_phase(rapidity_real(p, lambda)?, p.beta()))
}

pub fn quantization_phase_derivative(p: &MediumParams, lambda: f64) -> Result<f64> {
    let length = require_length(p)?;
    let h = rapidity_real(p, lambda)?;
    let b = p.beta();
    Ok(momentum_derivative(p, lambda)? * length
        + b / (h * h + 0.25 * b * b) * rapidity_derivative(p, lambda)?)
}

/// Edge-guarded search window on a propagating branch.
pub fn branch_window(p: &MediumParams, branch: Branch) -> Result<(f64, f64)> {
    let tau = p.edge_guard();
    match branch {
        Branch::Lower => Ok((tau, p.omega_perp() - 1.5 * tau)),
        Branch::Upper => Ok((
            p.omega_par() + 1.5 * tau,
            UPPER_WINDOW_FACTOR * p.omega_par(),
        )),
        _ => Err(Error::domain(
            "branch_window",
            f64::NAN,
            "one-particle modes live on the lower or upper branch",
        )),
    }
}

/// Number of multiples of `2 pi` in `(Phi(lo), Phi(hi)]`.
pub fn mode_count(p: &MediumParams, lo: f64, hi: f64) -> Result<usize> {
    let a = (quantization_phase(p, lo)? / TAU).floor();
    let b = (quantization_phase(p, hi)? / TAU).floor();
    Ok((b - a).max(0.0) as usize)
}

/// Real one-particle frequency of mode `mode_index` (counted from the bottom
/// of the branch window) at the radius stored in `p`.
pub fn solve_one_particle(p: &MediumParams, branch: Branch, mode_index: usize) -> Result<f64> {
    let (lo, hi) = branch_window(p, branch)?;
    let phi_lo = quantization_phase(p, lo)?;
    let phi_hi = quantization_phase(p, hi)?;
    let first = (phi_lo / TAU).floor() + 1.0;
    let target = TAU * (first + mode_index as f64);
    if target > phi_hi {
        let available = ((phi_hi / TAU).floor() - first + 1.0).max(0.0);
        return Err(Error::NoRoot(format!(
            "mode {mode_index} requested, only {available} modes on the {} branch window",
            branch.label()
        )));
    }
    let f = |x: f64| {
        quantization_phase(p, x)
            .map(|v| v - target)
            .unwrap_or(f64::NAN)
    };
    let rough = bisect(f, lo, hi, 1e-13, 200).ok_or_else(|| {
        Error::NoRoot(format!(
            "phase is not monotone across mode {mode_index}; no bracket"
        ))
    })?;
    let fdf = |x: f64| {
        (
            f(x),
            quantization_phase_derivative(p, x).unwrap_or(f64::NAN),
        )
    };
    Ok(newton_polish(fdf, rough, lo, hi, 1e-14, 20))
}

/// Consecutive one-particle roots `first .. first + count`, evaluated in
/// parallel; the output order follows the mode index.
pub fn solve_one_particle_range(
    p: &MediumParams,
    branch: Branch,
    first: usize,
    count: usize,
) -> Result<Vec<f64>> {
    (first..first + count)
        .into_par_iter()
        .map(|m| solve_one_particle(p, branch, m))
        .collect()
}

/// Residual of a real one-particle root, built through the generic machinery.
pub fn one_particle_residual(p: &MediumParams, omega: f64) -> Result<BaeResidual> {
    let h = rapidity_real(p, omega)?;
    let k = momentum_real(p, omega)?;
    let string = build_string(1, h, p.beta())?;
    bae_residual(
        p,
        &string,
        &[Complex64::new(k, 0.0)],
        &[Complex64::new(omega, 0.0)],
    )
}

/// Rapidities `h(omega_j)` of a list of frequencies.
pub fn rapidities_of(p: &MediumParams, omega: &[Complex64]) -> Result<Vec<Complex64>> {
    omega.iter().map(|w| rapidity_complex(p, *w)).collect()
}
