//! Independent closed-form evaluations used as test oracles. Nothing here
//! calls into the library.

#![allow(dead_code)]

use num_complex::Complex64;

/// Gap edges, atomic frequency and coupling in normalized units.
#[derive(Debug, Clone, Copy)]
pub struct Medium {
    pub lo: f64,
    pub hi: f64,
    pub atom: f64,
    pub beta: f64,
}

pub const CANONICAL: Medium = Medium {
    lo: 1.0,
    hi: 1.2,
    atom: 1.1,
    beta: 1e-3,
};

impl Medium {
    pub fn with_beta(self, beta: f64) -> Self {
        Medium { beta, ..self }
    }

    pub fn eps(&self, w: f64) -> f64 {
        (w * w - self.hi * self.hi) / (w * w - self.lo * self.lo)
    }

    pub fn eps_prime(&self, w: f64) -> f64 {
        let d = w * w - self.lo * self.lo;
        2.0 * w * (self.hi * self.hi - self.lo * self.lo) / (d * d)
    }

    pub fn nu(&self, x: f64) -> f64 {
        (-self.eps(x)).sqrt()
    }

    pub fn kappa(&self, x: f64) -> f64 {
        x * self.nu(x)
    }

    /// d(x nu)/dx = nu + x nu' with nu' = -eps' / (2 nu).
    pub fn kappa_prime(&self, x: f64) -> f64 {
        let nu = self.nu(x);
        nu - x * self.eps_prime(x) / (2.0 * nu)
    }

    pub fn n(&self, w: f64) -> f64 {
        self.eps(w).sqrt()
    }

    pub fn k(&self, w: f64) -> f64 {
        w * self.n(w)
    }

    pub fn h(&self, w: f64) -> f64 {
        self.atom * self.atom * (w - self.atom) / (w.powi(3) * self.n(w).powi(5))
    }

    pub fn f(&self, x: f64) -> f64 {
        self.atom * self.atom / (x.powi(3) * self.nu(x).powi(5))
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        self.f(x) * (-3.0 / x - 2.5 * self.eps_prime(x) / self.eps(x))
    }

    pub fn phi(&self, x: f64) -> f64 {
        (x - self.atom) * self.f(x)
    }

    pub fn a(&self) -> f64 {
        self.f(self.atom)
    }

    pub fn b(&self) -> f64 {
        self.f_prime(self.atom)
    }

    pub fn spacing(&self) -> f64 {
        self.beta / self.a()
    }

    /// Full continuation of `h` off the real gap axis:
    /// `n = i sgn(eta) sqrt(-eps)` with the principal square root.
    pub fn h_complex(&self, w: Complex64) -> Complex64 {
        let w2 = w * w;
        let eps = (w2 - self.hi * self.hi) / (w2 - self.lo * self.lo);
        let side = if w.im < 0.0 { -1.0 } else { 1.0 };
        let n = Complex64::new(0.0, side) * (-eps).sqrt();
        self.atom * self.atom * (w - self.atom) / (w2 * w * n.powi(5))
    }

    pub fn k_complex(&self, w: Complex64) -> Complex64 {
        let w2 = w * w;
        let eps = (w2 - self.hi * self.hi) / (w2 - self.lo * self.lo);
        let side = if w.im < 0.0 { -1.0 } else { 1.0 };
        w * Complex64::new(0.0, side) * (-eps).sqrt()
    }
}

/// Plain bisection on a sign change, to absolute width `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Least-squares line through the points, returned as (intercept, slope).
pub fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}
