//! Momentum and rapidity maps and their continuation off the real axis.
//!
//! ```text
//! k(w) = w n(w)
//! h(w) = (omega12 / w)^2 (w - omega12_bar) / (w n(w)^5)
//! ```
//!
//! Inside the gap the refractive index is imaginary. The branch is fixed
//! once and for all as `n(xi +/- i0) = +/- i nu(xi)`; every complex
//! evaluation with a gap real part goes through the sheet helpers in this
//! module, which build `n = i * sgn(eta) * sqrt(-eps(w))`. Since `-eps` is
//! close to the positive real axis there, the principal root is analytic
//! and no generic branch cut is ever crossed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::{Branch, MediumParams};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A frequency with a (possibly zero) imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFrequency {
    pub re: f64,
    pub im: f64,
}

impl ComplexFrequency {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<ComplexFrequency> for Complex64 {
    fn from(w: ComplexFrequency) -> Self {
        w.to_complex()
    }
}

impl From<Complex64> for ComplexFrequency {
    fn from(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }
}

/// `k(lambda)` on a propagating branch.
pub fn momentum_real(p: &MediumParams, lambda: f64) -> Result<f64> {
    Ok(lambda * p.refractive_index(lambda)?)
}

/// `k'(lambda) = n + lambda n'`, positive on both branches.
pub fn momentum_derivative(p: &MediumParams, lambda: f64) -> Result<f64> {
    let n = p.refractive_index(lambda)?;
    Ok(n + lambda * p.eps_prime(lambda) / (2.0 * n))
}

/// `h(lambda)` on a propagating branch.
pub fn rapidity_real(p: &MediumParams, lambda: f64) -> Result<f64> {
    let n = p.refractive_index(lambda)?;
    let w12 = p.omega12();
    Ok(w12 * w12 * (lambda - p.omega12_bar()) / (lambda.powi(3) * n.powi(5)))
}

/// `h'(lambda)`. Written as `pre * [1 + (lambda - w12bar)(-3/lambda - 5/2 eps'/eps)]`
/// so it stays finite through the zero of `h`.
pub fn rapidity_derivative(p: &MediumParams, lambda: f64) -> Result<f64> {
    let n = p.refractive_index(lambda)?;
    let w12 = p.omega12();
    let pre = w12 * w12 / (lambda.powi(3) * n.powi(5));
    let bracket =
        1.0 + (lambda - p.omega12_bar()) * (-3.0 / lambda - 2.5 * p.eps_log_prime(lambda));
    Ok(pre * bracket)
}

/// First-order continuation `k(l + i eta) = k(l) + i eta k'(l)`, same for `h`.
/// Only meaningful for `|eta| << lambda`.
pub fn continue_outside(p: &MediumParams, lambda: f64, eta: f64) -> Result<(Complex64, Complex64)> {
    let k = Complex64::new(
        momentum_real(p, lambda)?,
        eta * momentum_derivative(p, lambda)?,
    );
    let h = Complex64::new(
        rapidity_real(p, lambda)?,
        eta * rapidity_derivative(p, lambda)?,
    );
    Ok((k, h))
}

/// `f(xi) = omega12^2 / (xi^3 nu^5)`.
pub fn form_factor(p: &MediumParams, xi: f64) -> Result<f64> {
    let nu = p.gap_decay_index(xi)?;
    let w12 = p.omega12();
    Ok(w12 * w12 / (xi.powi(3) * nu.powi(5)))
}

/// `f'(xi) = f (-3/xi - 5 nu'/nu)` with `nu'/nu = eps'/(2 eps)`.
pub fn form_factor_derivative(p: &MediumParams, xi: f64) -> Result<f64> {
    let f = form_factor(p, xi)?;
    Ok(f * (-3.0 / xi - 2.5 * p.eps_log_prime(xi)))
}

/// `phi(xi) = (xi - omega12_bar) f(xi)`; on the real gap axis `h(xi + i0) = -i phi`.
pub fn phi(p: &MediumParams, xi: f64) -> Result<f64> {
    Ok((xi - p.omega12_bar()) * form_factor(p, xi)?)
}

pub fn phi_prime(p: &MediumParams, xi: f64) -> Result<f64> {
    Ok(form_factor(p, xi)? + (xi - p.omega12_bar()) * form_factor_derivative(p, xi)?)
}

/// First-order continuation into the gap:
///
/// ```text
/// k(xi + i eta) = sgn(eta) [-eta kappa'(xi) + i kappa(xi)]
/// h(xi + i eta) = sgn(eta) [ eta phi'(xi)   - i phi(xi)  ]
/// ```
pub fn continue_gap(p: &MediumParams, xi: f64, eta: f64) -> Result<(Complex64, Complex64)> {
    p.require_gap("continue_gap", xi)?;
    if eta == 0.0 || !eta.is_finite() {
        return Err(Error::domain(
            "continue_gap",
            eta,
            "eta = 0 is the branch point of sgn(eta)",
        ));
    }
    let s = eta.signum();
    let k = Complex64::new(-eta * p.kappa_prime(xi)?, p.kappa(xi)?) * s;
    let h = Complex64::new(eta * phi_prime(p, xi)?, -phi(p, xi)?) * s;
    Ok((k, h))
}

/// `eps'/eps` for complex argument.
fn eps_log_prime_c(p: &MediumParams, w: Complex64) -> Complex64 {
    let w2 = w * w;
    let par2 = p.omega_par() * p.omega_par();
    (1.0 / (w2 - par2) - 1.0 / (w2 - 1.0)) * w * 2.0
}

fn eps_c(p: &MediumParams, w: Complex64) -> Complex64 {
    let w2 = w * w;
    (w2 - p.omega_par() * p.omega_par()) / (w2 - 1.0)
}

/// `sqrt(-eps(w))` for `Re w` in the gap; `n = i * side * s` on the chosen sheet.
fn gap_root(p: &MediumParams, w: Complex64) -> Complex64 {
    (-eps_c(p, w)).sqrt()
}

/// Rapidity and its derivative on the gap sheet selected by `side`
/// (+1: upper, continuous with `n = +i nu`), as functions of the offset
/// `delta = w - omega12_bar`. Working with the offset keeps the factor
/// `(w - omega12_bar)` exact near the atom.
pub(crate) fn gap_sheet_rapidity(
    p: &MediumParams,
    delta: Complex64,
    side: f64,
) -> (Complex64, Complex64) {
    let w = delta + p.omega12_bar();
    let s = gap_root(p, w);
    let w12 = p.omega12();
    // n^5 = (i side s)^5 = i side s^5
    let pre = -I * side * w12 * w12 / (w * w * w * s.powi(5));
    let bracket = delta * (-3.0 / w - eps_log_prime_c(p, w) * 2.5) + 1.0;
    (pre * delta, pre * bracket)
}

/// Momentum `k = w n` on the gap sheet selected by `side`.
pub(crate) fn gap_sheet_momentum(p: &MediumParams, w: Complex64, side: f64) -> Complex64 {
    I * side * w * gap_root(p, w)
}

fn outside_index(p: &MediumParams, w: Complex64) -> Complex64 {
    eps_c(p, w).sqrt()
}

fn sheet_side(op: &'static str, p: &MediumParams, w: Complex64) -> Result<Option<f64>> {
    if !(w.re > 0.0 && w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::domain(op, w.re, "real part must be positive"));
    }
    match p.classify(w.re) {
        Branch::Gap => {
            if w.im == 0.0 {
                Err(Error::domain(
                    op,
                    w.re,
                    "real gap frequency sits on the branch cut; give a side",
                ))
            } else {
                Ok(Some(w.im.signum()))
            }
        }
        Branch::Edge => Err(Error::domain(op, w.re, "within the edge guard")),
        _ => Ok(None),
    }
}

/// Exact `k(w)` for complex `w`, using the branch convention of this module.
pub fn momentum_complex(p: &MediumParams, w: Complex64) -> Result<Complex64> {
    match sheet_side("momentum_complex", p, w)? {
        Some(side) => Ok(gap_sheet_momentum(p, w, side)),
        None => Ok(w * outside_index(p, w)),
    }
}

/// Exact `h(w)` for complex `w`, using the branch convention of this module.
pub fn rapidity_complex(p: &MediumParams, w: Complex64) -> Result<Complex64> {
    match sheet_side("rapidity_complex", p, w)? {
        Some(side) => Ok(gap_sheet_rapidity(p, w - p.omega12_bar(), side).0),
        None => {
            let n = outside_index(p, w);
            let w12 = p.omega12();
            Ok((w - p.omega12_bar()) * w12 * w12 / (w * w * w * n.powi(5)))
        }
    }
}

/// Like [`rapidity_complex`], but a real gap frequency is resolved on the
/// sheet `side` instead of being rejected.
pub(crate) fn rapidity_on_side(p: &MediumParams, w: Complex64, side: f64) -> Result<Complex64> {
    if w.im == 0.0 && p.classify(w.re) == Branch::Gap {
        let side = if side < 0.0 { -1.0 } else { 1.0 };
        return Ok(gap_sheet_rapidity(p, w - p.omega12_bar(), side).0);
    }
    rapidity_complex(p, w)
}

/// Local expansion `phi(xi) ~ a (xi - c) + b (xi - c)^2` about the atomic
/// frequency `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linearization {
    pub center: f64,
    pub a: f64,
    pub b: f64,
    /// Largest offset from `center` at which the quadratic model is within
    /// `tolerance` (relative) of the exact `phi`, on both sides.
    pub valid_radius: f64,
    pub tolerance: f64,
}

impl Linearization {
    pub fn quadratic(&self, xi: f64) -> f64 {
        let d = xi - self.center;
        self.a * d + self.b * d * d
    }

    /// `beta / a`, the spacing of linear gap-soliton frequencies.
    pub fn spacing(&self, beta: f64) -> f64 {
        beta / self.a
    }
}

/// Default relative error that bounds `valid_radius`.
pub const DEFAULT_VALIDITY_TOLERANCE: f64 = 0.01;

pub fn linearize(p: &MediumParams) -> Result<Linearization> {
    linearize_with_tolerance(p, DEFAULT_VALIDITY_TOLERANCE)
}

pub fn linearize_with_tolerance(p: &MediumParams, tolerance: f64) -> Result<Linearization> {
    p.require_atom_in_gap()?;
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(Error::InvalidParams(format!(
            "validity tolerance must lie in (0, 1), got {tolerance}"
        )));
    }
    let center = p.omega12_bar();
    let a = form_factor(p, center)?;
    let b = form_factor_derivative(p, center)?;
    let mut lin = Linearization {
        center,
        a,
        b,
        valid_radius: 0.0,
        tolerance,
    };
    lin.valid_radius = validity_radius(p, &lin)?;
    Ok(lin)
}

fn validity_radius(p: &MediumParams, lin: &Linearization) -> Result<f64> {
    let guard = p.edge_guard();
    let r_max =
        ((lin.center - p.omega_perp()).min(p.omega_par() - lin.center) - 2.0 * guard).max(0.0);
    let bad = |r: f64| -> bool {
        [-1.0, 1.0].iter().any(|&s| {
            let xi = lin.center + s * r;
            match phi(p, xi) {
                Ok(exact) => ((lin.quadratic(xi) - exact) / exact).abs() >= lin.tolerance,
                Err(_) => true,
            }
        })
    };
    // geometric scan for the first failing radius, then bisect
    let mut good = 0.0;
    let mut r = 1e-9_f64.min(r_max);
    while r < r_max {
        if bad(r) {
            break;
        }
        good = r;
        r *= 1.25;
    }
    if r >= r_max {
        if bad(r_max) {
            r = r_max;
        } else {
            return Ok(r_max);
        }
    }
    let mut hi = r;
    for _ in 0..60 {
        let mid = 0.5 * (good + hi);
        if bad(mid) {
            hi = mid;
        } else {
            good = mid;
        }
    }
    Ok(good)
}
