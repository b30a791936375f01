//! Bracketed bisection and Newton polishing for monotone scalar problems.

/// Bisects `f` on `[lo, hi]`, which must bracket a sign change. Stops once the
/// bracket is narrower than `xtol_rel * |x|` or after `max_iter` halvings.
pub(crate) fn bisect<F>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    xtol_rel: f64,
    max_iter: usize,
) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= xtol_rel * mid.abs() {
            return Some(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Newton iteration from `x0`, kept inside `[lo, hi]`. Converged when the
/// step falls below `xtol_rel * |x|`.
pub(crate) fn newton_polish<F>(
    fdf: F,
    x0: f64,
    lo: f64,
    hi: f64,
    xtol_rel: f64,
    max_iter: usize,
) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    let mut x = x0;
    for _ in 0..max_iter {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 || dfx == 0.0 || !dfx.is_finite() {
            break;
        }
        let next = (x - fx / dfx).clamp(lo, hi);
        let step = (next - x).abs();
        x = next;
        if step < xtol_rel * x.abs() {
            break;
        }
    }
    x
}
