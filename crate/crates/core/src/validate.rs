//! Invariant suite behind `gapspec validate`.
//!
//! Every check is a pure function of the medium parameters, so the report
//! is byte-identical whatever the size of the worker pool.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bae::{
    bae_residual, branch_window, build_string, check_nc, mode_count, one_particle_residual,
    quantization_phase, solve_one_particle_range,
};
use crate::error::Result;
use crate::medium::{Branch, MediumParams};
use crate::spectrum::{fit_band, gap_pair, ordinary_candidate, ordinary_soliton, GapSector};
use crate::stringmap::{
    continue_gap, form_factor, form_factor_derivative, momentum_derivative, momentum_real, phi,
    phi_prime, rapidity_complex, rapidity_derivative, rapidity_real,
};

/// Radii used by the residual-decay check.
pub const DECAY_LENGTHS: [f64; 3] = [1e3, 2e3, 4e3];
/// Radius used by the one-particle quantization check.
pub const QUANTIZATION_LENGTH: f64 = 1e4;
pub const QUANTIZATION_ROOTS: usize = 200;
/// Highest soliton order covered by the closed-form checks.
pub const FORMULA_L_MAX: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            pass,
            detail: detail.into(),
        }
    }

    fn from_result(name: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((pass, detail)) => Check::new(name, pass, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One `PASS|FAIL name: detail` line per check, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        out
    }
}

type CheckFn = fn(&MediumParams) -> Check;

const SUITE: &[CheckFn] = &[
    permittivity_sign_pattern,
    kappa_monotone,
    derivatives_match_differences,
    attraction_criterion,
    gap_continuation_conjugation,
    linearization_model,
    string_conjugation,
    closed_forms,
    stability_inequalities,
    energy_reality,
    sign_condition_behavior,
    size_decreasing,
    residual_decay,
    perturbed_string_residual,
    one_particle_roots,
    exact_self_consistency,
    exact_convergence_order,
    effective_mass_fit,
];

/// Runs every check on `p`. Checks are independent and run concurrently on
/// the current rayon pool; the report keeps the fixed suite order.
pub fn run_suite(p: &MediumParams) -> ValidationReport {
    ValidationReport {
        checks: SUITE.par_iter().map(|check| check(p)).collect(),
    }
}

fn interior_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
}

fn branch_samples(p: &MediumParams, branch: Branch, n: usize) -> Vec<f64> {
    let tau = p.edge_guard();
    let (lo, hi) = match branch {
        Branch::Lower => (tau, p.omega_perp() - tau),
        Branch::Gap => (p.omega_perp() + tau, p.omega_par() - tau),
        _ => (
            p.omega_par() + tau,
            crate::bae::UPPER_WINDOW_FACTOR * p.omega_par(),
        ),
    };
    interior_grid(lo, hi, n).collect()
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn permittivity_sign_pattern(p: &MediumParams) -> Check {
    let r = (|| {
        let mut bad = 0;
        for (branch, positive) in [
            (Branch::Lower, true),
            (Branch::Gap, false),
            (Branch::Upper, true),
        ] {
            for w in branch_samples(p, branch, 1000) {
                if (p.permittivity(w)? > 0.0) != positive {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("{bad} sign violations in 3000 samples")))
    })();
    Check::from_result("permittivity sign pattern", r)
}

fn kappa_monotone(p: &MediumParams) -> Check {
    let r = (|| {
        let ks = branch_samples(p, Branch::Gap, 1000)
            .into_iter()
            .map(|x| p.kappa(x))
            .collect::<Result<Vec<_>>>()?;
        let bad = ks.windows(2).filter(|w| w[1] >= w[0]).count();
        let kp_bad = branch_samples(p, Branch::Gap, 1000)
            .into_iter()
            .map(|x| p.kappa_prime(x))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&d| d >= 0.0)
            .count();
        Ok((
            bad == 0 && kp_bad == 0,
            format!("{bad} non-decreasing steps, {kp_bad} non-negative slopes on 1000 points"),
        ))
    })();
    Check::from_result("kappa strictly decreasing", r)
}

fn central_difference(f: &dyn Fn(f64) -> Result<f64>, x: f64) -> Result<f64> {
    let step = 1e-7 * x;
    Ok((f(x + step)? - f(x - step)?) / (2.0 * step))
}

fn derivatives_match_differences(p: &MediumParams) -> Check {
    type Pair<'a> = (
        &'static str,
        Box<dyn Fn(f64) -> Result<f64> + 'a>,
        Box<dyn Fn(f64) -> Result<f64> + 'a>,
        &'a [f64],
    );
    let span = p.omega_par() - p.omega_perp();
    let outside = [
        0.3,
        0.5,
        0.8,
        p.omega_par() + 0.3 * span,
        2.0 * p.omega_par(),
    ];
    let inside = [
        p.omega_perp() + 0.2 * span,
        p.omega_perp() + 0.5 * span,
        p.omega_perp() + 0.8 * span,
    ];
    let pairs: Vec<Pair> = vec![
        (
            "eps",
            Box::new(|x| p.permittivity(x)),
            Box::new(|x| p.permittivity_derivative(x)),
            &outside,
        ),
        (
            "eps(gap)",
            Box::new(|x| p.permittivity(x)),
            Box::new(|x| p.permittivity_derivative(x)),
            &inside,
        ),
        (
            "n",
            Box::new(|x| p.refractive_index(x)),
            Box::new(|x| p.refractive_index_derivative(x)),
            &outside,
        ),
        (
            "nu",
            Box::new(|x| p.gap_decay_index(x)),
            Box::new(|x| p.gap_decay_index_derivative(x)),
            &inside,
        ),
        (
            "kappa",
            Box::new(|x| p.kappa(x)),
            Box::new(|x| p.kappa_prime(x)),
            &inside,
        ),
        (
            "k",
            Box::new(|x| momentum_real(p, x)),
            Box::new(|x| momentum_derivative(p, x)),
            &outside,
        ),
        (
            "h",
            Box::new(|x| rapidity_real(p, x)),
            Box::new(|x| rapidity_derivative(p, x)),
            &outside,
        ),
        (
            "f",
            Box::new(|x| form_factor(p, x)),
            Box::new(|x| form_factor_derivative(p, x)),
            &inside,
        ),
        (
            "phi",
            Box::new(|x| phi(p, x)),
            Box::new(|x| phi_prime(p, x)),
            &inside,
        ),
    ];
    let r = (|| {
        let mut worst: (f64, &str) = (0.0, "");
        for (name, f, df, points) in &pairs {
            for &x in points.iter() {
                let e = rel_err(df(x)?, central_difference(f.as_ref(), x)?);
                if e > worst.0 {
                    worst = (e, name);
                }
            }
        }
        Ok((
            worst.0 < 1e-6,
            format!("worst relative error {:.3e} ({})", worst.0, worst.1),
        ))
    })();
    Check::from_result("analytic derivatives vs central differences", r)
}

fn attraction_criterion(p: &MediumParams) -> Check {
    let r = (|| {
        let mut lower_bad = 0;
        for w in branch_samples(p, Branch::Lower, 1000) {
            if !(rapidity_derivative(p, w)? > 0.0) {
                lower_bad += 1;
            }
        }
        let mut upper_bad = 0;
        for w in branch_samples(p, Branch::Upper, 1000) {
            if !(rapidity_derivative(p, w)? < 0.0) {
                upper_bad += 1;
            }
        }
        Ok((
            lower_bad + upper_bad == 0,
            format!("h' <= 0 at {lower_bad}/1000 lower samples, h' >= 0 at {upper_bad}/1000 upper samples"),
        ))
    })();
    Check::from_result("attraction only on the lower branch", r)
}

fn gap_continuation_conjugation(p: &MediumParams) -> Check {
    let r = (|| {
        let mut worst: f64 = 0.0;
        for xi in branch_samples(p, Branch::Gap, 50) {
            for eta in [1e-6, 1e-4, 1e-2] {
                let (k1, h1) = continue_gap(p, xi, eta)?;
                let (k2, h2) = continue_gap(p, xi, -eta)?;
                worst = worst
                    .max((k1.conj() - k2).norm())
                    .max((h1.conj() - h2).norm());
            }
        }
        Ok((worst == 0.0, format!("max conjugation defect {worst:.3e}")))
    })();
    Check::from_result("gap continuation conjugation symmetry", r)
}

fn linearization_model(p: &MediumParams) -> Check {
    let r = (|| {
        let lin = *GapSector::new(p)?.linearization();
        let mut bad = 0;
        for x in interior_grid(-lin.valid_radius, lin.valid_radius, 200) {
            if x == 0.0 {
                continue;
            }
            let exact = phi(p, lin.center + x)?;
            if (exact - lin.a * x).abs() > lin.b * x * x + lin.tolerance * exact.abs() {
                bad += 1;
            }
        }
        Ok((
            lin.a > 0.0 && lin.b > 0.0 && bad == 0,
            format!(
                "a = {:.9e}, b = {:.6e}, valid_radius = {:.6e}, {bad}/200 points outside the quadratic bound",
                lin.a, lin.b, lin.valid_radius
            ),
        ))
    })();
    Check::from_result("linearization coefficients", r)
}

fn string_conjugation(p: &MediumParams) -> Check {
    let r = (|| {
        let mut worst: f64 = 0.0;
        let mut spacing: f64 = 0.0;
        for n in 1..=50 {
            let s = build_string(n, 0.3, p.beta())?;
            let h = s.rapidities();
            for j in 0..n {
                worst = worst.max((h[j].conj() - h[n - 1 - j]).norm());
            }
            for w in h.windows(2) {
                spacing = spacing.max(((w[0].im - w[1].im) - p.beta()).abs());
            }
        }
        Ok((
            worst == 0.0 && spacing <= 1e-15,
            format!("conjugation defect {worst:.3e}, spacing defect {spacing:.3e} for N <= 50"),
        ))
    })();
    Check::from_result("string conjugation symmetry", r)
}

fn closed_forms(p: &MediumParams) -> Check {
    let r = (|| {
        let sector = GapSector::new(p)?;
        let a = sector.linearization().a;
        let b = sector.linearization().b;
        let c = p.omega12();
        let s = p.beta() / a;
        let mut worst: f64 = 0.0;
        // energy-difference bookkeeping cancels large totals; looser bound
        let mut bookkeeping: f64 = 0.0;
        for l in 1..=FORMULA_L_MAX.min(sector.l_max()) {
            let lf = l as f64;
            let e0: f64 = (1..=l).map(|j| 2.0 * sector.linear_frequency(l, j)).sum();
            worst = worst.max(rel_err(sector.linear_energy(l), e0));
            let ep: f64 = c
                + (1..=l)
                    .map(|j| 2.0 * sector.pinned_frequency(l, j))
                    .sum::<f64>();
            worst = worst.max(rel_err(sector.pinned_energy(l), ep));
            worst = worst.max(rel_err(
                sector.band_halfwidth(l),
                b * p.beta() * p.beta() * (4.0 * lf * lf - 1.0) / (12.0 * a.powi(3)),
            ));
            for l1 in 1..l {
                let diff = sector.linear_energy(l1) + sector.linear_energy(l - l1)
                    - sector.linear_energy(l);
                let ud = sector.dissociation_energy(l, l1)?;
                worst = worst.max(rel_err(ud, 2.0 * s * (l1 * (l - l1)) as f64));
                bookkeeping = bookkeeping.max(rel_err(ud, diff));
            }
            let state = sector.pinned(l)?;
            let ul = sector.pinned_energy(l) - (c + sector.linear_energy(l));
            bookkeeping = bookkeeping.max(rel_err(state.binding_energy, ul));
            worst = worst.max(rel_err(state.binding_energy, -s * lf));
        }
        let ratio = sector.band_halfwidth(2) / sector.band_halfwidth(1);
        let curv =
            sector.linear_energy(3) + sector.linear_energy(1) - 2.0 * sector.linear_energy(2);
        Ok((
            worst < 1e-12
                && bookkeeping < 1e-9
                && (ratio - 5.0).abs() < 1e-12
                && rel_err(curv, -2.0 * s) < 1e-9,
            format!(
                "closed-form defect {worst:.3e}, bookkeeping defect {bookkeeping:.3e}, \
                 Delta_2/Delta_1 = {ratio:.15}, concavity {curv:.6e}"
            ),
        ))
    })();
    Check::from_result("closed-form energetics", r)
}

fn stability_inequalities(p: &MediumParams) -> Check {
    let r = (|| {
        let sector = GapSector::new(p)?;
        let top = FORMULA_L_MAX.min(sector.l_max()).min(sector.pinned_l_max());
        let mut bad = 0;
        for l in 2..=top {
            for l1 in 1..l {
                if !(sector.dissociation_energy(l, l1)? > 0.0) {
                    bad += 1;
                }
            }
        }
        let mut hierarchy_bad = 0;
        for l in 1..=top {
            let s = sector.pinned(l)?;
            let u1 = s.pair_extraction_energy.unwrap_or(f64::NAN);
            let ul = s.binding_energy.abs();
            let tol = 1e-12 * u1.abs();
            let ok = if l == 1 {
                (u1 - ul).abs() <= tol
            } else {
                u1 > ul + tol
            };
            if !ok {
                hierarchy_bad += 1;
            }
        }
        Ok((
            bad == 0 && hierarchy_bad == 0,
            format!("{bad} non-positive U_d, {hierarchy_bad} pinned hierarchy violations for l <= {top}"),
        ))
    })();
    Check::from_result("stability inequalities", r)
}

fn energy_reality(p: &MediumParams) -> Check {
    let r = (|| {
        let sector = GapSector::new(p)?;
        let mut worst: f64 = 0.0;
        let mut record = |w: Vec<Complex64>| {
            let e: Complex64 = w.iter().sum();
            worst = worst.max(e.im.abs() / e.re.abs());
        };
        if p.classify(p.omega12_bar()) != Branch::Upper {
            for n in [1, 2, 5] {
                record(ordinary_soliton(p, n, -0.5)?.frequencies());
            }
        }
        let top = 3.min(sector.l_max());
        for l in 1..=top {
            let h = 0.1 * p.beta();
            record(sector.linear(l, h)?.frequencies());
            // the quadratic model is only built inside valid_radius
            match sector.corrected(l, h) {
                Ok(s) => record(s.frequencies()),
                Err(crate::Error::Validity { .. }) => {}
                Err(e) => return Err(e),
            }
            record(sector.exact(l, h)?.frequencies());
            record(sector.pinned(l)?.constituent_frequencies());
        }
        Ok((worst < 1e-12, format!("max |Im E| / |E| = {worst:.3e}")))
    })();
    Check::from_result("energy reality", r)
}

fn sign_condition_behavior(p: &MediumParams) -> Check {
    let r = (|| {
        let pair = gap_pair(p, 0.1 * p.beta())?;
        let pass_pos = check_nc(&pair.string(), &pair.momenta())?.pass;
        let flipped = build_string(2, -0.1 * p.beta(), p.beta())?;
        let xi = pair.pairs[0].xi;
        let eta = -pair.pairs[0].eta;
        let (k_up, _) = continue_gap(p, xi, eta)?;
        let (k_down, _) = continue_gap(p, xi, -eta)?;
        let pass_neg = check_nc(&flipped, &[k_up, k_down])?.pass;
        let candidate_rejected = match ordinary_candidate(p, Branch::Lower, 2, 0.1) {
            Ok(s) => !check_nc(&s.string(), &s.momenta())?.pass,
            Err(_) => true,
        } && ordinary_soliton(p, 2, 0.1).is_err();
        let single = check_nc(
            &build_string(1, 0.2, p.beta())?,
            &[Complex64::new(0.4, 0.0)],
        )?
        .pass;
        Ok((
            pass_pos && !pass_neg && candidate_rejected && single,
            format!(
                "H>0 gap pair pass={pass_pos}, H<0 gap pair pass={pass_neg}, lower-branch H>0 rejected={candidate_rejected}, N=1 pass={single}"
            ),
        ))
    })();
    Check::from_result("sign condition", r)
}

fn size_decreasing(p: &MediumParams) -> Check {
    let r = (|| {
        let sector = GapSector::new(p)?;
        let sizes = (1..=sector.l_max())
            .map(|l| sector.linear(l, 0.0).map(|s| s.size))
            .collect::<Result<Vec<_>>>()?;
        let bad = sizes.windows(2).filter(|w| w[1] >= w[0]).count();
        Ok((
            bad == 0,
            format!(
                "{bad} non-decreasing steps in delta_l for l = 1..{}",
                sector.l_max()
            ),
        ))
    })();
    Check::from_result("soliton size decreasing in l", r)
}

/// Least-squares slope of `ys` against `xs`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn residual_decay(p: &MediumParams) -> Check {
    let r = (|| {
        let pair = gap_pair(p, 0.1 * p.beta())?;
        let logs = DECAY_LENGTHS
            .iter()
            .map(|&len| {
                let q = p.with_length(len)?;
                Ok(
                    bae_residual(&q, &pair.string(), &pair.momenta(), &pair.frequencies())?
                        .max_ln_abs(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let slope = fitted_slope(&DECAY_LENGTHS, &logs);
        let kappa = pair.pairs[0].kappa;
        let err = rel_err(-slope, kappa);
        Ok((
            err < 0.02,
            format!(
                "slope {slope:.9e} vs -kappa {:.9e} (relative {err:.3e})",
                -kappa
            ),
        ))
    })();
    Check::from_result("gap pair residual decay", r)
}

fn perturbed_string_residual(p: &MediumParams) -> Check {
    let r = (|| {
        let q = p.with_length(DECAY_LENGTHS[0])?;
        let state = GapSector::new(p)?.exact(1, 0.1 * p.beta())?;
        let valid = bae_residual(&q, &state.string(), &state.momenta(), &state.frequencies())?;
        let shifted = build_string(2, state.carrying_rapidity + 1e-3, p.beta())?;
        let perturbed = bae_residual(&q, &shifted, &state.momenta(), &state.frequencies())?;
        let ratio = perturbed.mapping_defect / valid.mapping_defect.max(f64::MIN_POSITIVE);
        Ok((
            ratio > 1e2,
            format!(
                "mapping defect {:.3e} (valid) vs {:.3e} (H + 1e-3)",
                valid.mapping_defect, perturbed.mapping_defect
            ),
        ))
    })();
    Check::from_result("perturbed string residual", r)
}

fn one_particle_roots(p: &MediumParams) -> Check {
    let r = (|| {
        let q = p.with_length(QUANTIZATION_LENGTH)?;
        let roots = solve_one_particle_range(&q, Branch::Lower, 0, QUANTIZATION_ROOTS + 1)?;
        let worst = roots[..QUANTIZATION_ROOTS]
            .iter()
            .map(|&w| one_particle_residual(&q, w).map(|r| r.max_abs()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let (lo, _) = branch_window(&q, Branch::Lower)?;
        let cut = 0.5 * (roots[QUANTIZATION_ROOTS - 1] + roots[QUANTIZATION_ROOTS]);
        let winding = mode_count(&q, lo, cut)?;
        let increasing = roots.windows(2).all(|w| w[1] > w[0])
            && roots.windows(2).all(|w| {
                momentum_real(&q, w[1]).unwrap_or(0.0) > momentum_real(&q, w[0]).unwrap_or(0.0)
            });
        let phase_ok = roots.iter().all(|&w| {
            quantization_phase(&q, w)
                .map(|v| v.is_finite())
                .unwrap_or(false)
        });
        Ok((
            worst < 1e-10 && winding == QUANTIZATION_ROOTS && increasing && phase_ok,
            format!(
                "max residual {worst:.3e} over {QUANTIZATION_ROOTS} roots, winding count {winding}"
            ),
        ))
    })();
    Check::from_result("one-particle quantization", r)
}

fn exact_self_consistency(p: &MediumParams) -> Check {
    let r = (|| {
        let sector = GapSector::new(p)?;
        let l = 3.min(sector.l_max());
        let carrying = 0.1 * p.beta();
        let state = sector.exact(l, carrying)?;
        let mut worst: f64 = 0.0;
        for (j, pair) in state.pairs.iter().enumerate() {
            let h = rapidity_complex(p, Complex64::new(pair.xi, pair.eta))?;
            let target_im = p.beta() * (l as f64 - (j + 1) as f64 + 0.5);
            worst = worst
                .max((h.re - carrying).abs())
                .max((h.im - target_im).abs());
        }
        let nc = check_nc(&state.string(), &state.momenta())?.pass;
        Ok((
            worst < 1e-12 * p.beta() && nc,
            format!(
                "l = {l}: max equation residual {worst:.3e} (bound {:.3e}), NC pass={nc}",
                1e-12 * p.beta()
            ),
        ))
    })();
    Check::from_result("exact soliton self-consistency", r)
}

/// `max_j |xi_exact - xi_linear|` for an `l`-pair soliton at `H = 0.1 beta`.
pub fn linear_deviation(p: &MediumParams, l: usize) -> Result<f64> {
    let sector = GapSector::new(p)?;
    let carrying = 0.1 * p.beta();
    let exact = sector.exact(l, carrying)?;
    let linear = sector.linear(l, carrying)?;
    Ok(exact
        .pairs
        .iter()
        .zip(&linear.pairs)
        .map(|(e, lin)| (e.xi - lin.xi).abs())
        .fold(0.0, f64::max))
}

fn exact_convergence_order(p: &MediumParams) -> Check {
    let r = (|| {
        let betas = [p.beta(), 0.5 * p.beta(), 0.25 * p.beta()];
        let ln_b: Vec<f64> = betas.iter().map(|b| b.ln()).collect();
        let mut exponents = Vec::new();
        for l in 1..=3 {
            let devs = betas
                .iter()
                .map(|&b| {
                    let q = MediumParams::new(1.0, p.omega_par(), p.omega12(), b)?
                        .with_lamb_shifted(p.omega12_bar())?
                        .with_edge_guard(p.edge_guard_rel())?;
                    linear_deviation(&q, l).map(f64::ln)
                })
                .collect::<Result<Vec<_>>>()?;
            exponents.push(fitted_slope(&ln_b, &devs));
        }
        let pass = exponents.iter().all(|e| (e - 2.0).abs() <= 0.2);
        let listed: Vec<String> = exponents.iter().map(|e| format!("{e:.4}")).collect();
        Ok((
            pass,
            format!("fitted exponents for l = 1, 2, 3: {}", listed.join(", ")),
        ))
    })();
    Check::from_result("exact vs linear convergence order", r)
}

/// Carrying rapidities used for the small-`q` band fit: `H = 0.02 beta i`.
pub fn fit_grid(beta: f64) -> Vec<f64> {
    (0..8).map(|i| 0.02 * beta * i as f64).collect()
}

fn effective_mass_fit(p: &MediumParams) -> Check {
    let r = (|| {
        let sector = GapSector::new(p)?;
        let mut pass = true;
        let mut parts = Vec::new();
        for l in 1..=3 {
            let fit = fit_band(&sector, l, &fit_grid(p.beta()))?;
            let depression = fit.depression / sector.band_halfwidth(l);
            let curvature = fit.inverse_mass * sector.effective_mass(l)?;
            pass &= (depression - 1.0).abs() < 0.05 && (curvature - 1.0).abs() < 0.05;
            parts.push(format!(
                "l={l} shift/Delta={depression:.4} curvature*m={curvature:.4}"
            ));
        }
        Ok((pass, parts.join(", ")))
    })();
    Check::from_result("effective mass and band width", r)
}
