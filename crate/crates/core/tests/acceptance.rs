//! Acceptance gate. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.

// `!(x > 0.0)` is deliberate: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::f64::consts::TAU;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{line_fit, rel, CANONICAL};
use gapspec::bae::{
    bae_residual, branch_window, build_string, check_nc, one_particle_residual,
    solve_one_particle_range, UPPER_WINDOW_FACTOR,
};
use gapspec::spectrum::{gap_pair, ordinary_soliton, GapSector};
use gapspec::stringmap::{momentum_derivative, momentum_real, rapidity_derivative, rapidity_real};
use gapspec::{Branch, MediumParams};
use num_complex::Complex64;

type Outcome = Result<(bool, String), String>;

fn sector_at(beta: f64) -> GapSector {
    GapSector::new(&MediumParams::new(1.0, 1.2, 1.1, beta).unwrap()).unwrap()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn samples(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / count as f64)
}

fn formula_reproduction() -> Outcome {
    let m = CANONICAL;
    let s = sector_at(m.beta);
    let (c, sp) = (m.atom, m.spacing());
    let mut worst: f64 = 0.0;
    for l in 1..=30usize {
        let lf = l as f64;
        worst = worst.max(rel(s.linear_energy(l), 2.0 * c * lf - sp * lf * lf));
        let delta = m.b() * m.beta * m.beta * (4.0 * lf * lf - 1.0) / (12.0 * m.a().powi(3));
        worst = worst.max(rel(s.band_halfwidth(l), delta));
        for l1 in 1..l {
            let ud = 2.0 * sp * (l1 * (l - l1)) as f64;
            worst = worst.max(rel(s.dissociation_energy(l, l1).map_err(err)?, ud));
        }
        let pinned = s.pinned(l).map_err(err)?;
        worst = worst.max(rel(
            s.pinned_energy(l),
            c * (2.0 * lf + 1.0) - sp * lf * (lf + 1.0),
        ));
        worst = worst.max(rel(
            pinned.total_energy,
            c * (2.0 * lf + 1.0) - sp * lf * (lf + 1.0),
        ));
        worst = worst.max(rel(pinned.binding_energy, -sp * lf));
        let u1 = pinned.pair_extraction_energy.ok_or("missing U_1")?;
        worst = worst.max(rel(u1, sp * (2.0 * lf - 1.0)));
    }
    Ok((
        worst < 1e-12,
        format!("max relative error {worst:.3e} over l <= 30"),
    ))
}

fn attraction() -> Outcome {
    let m = CANONICAL;
    let p = MediumParams::canonical();
    let tau = p.edge_guard();
    // oracle derivative by central difference with a relative step
    let oracle = |w: f64| {
        let d = 1e-7 * w;
        (m.h(w + d) - m.h(w - d)) / (2.0 * d)
    };
    let mut lower_bad = 0;
    for w in samples(tau, 1.0 - tau, 1000) {
        let d = rapidity_derivative(&p, w).map_err(err)?;
        if !(d > 0.0 && oracle(w) > 0.0) {
            lower_bad += 1;
        }
    }
    let mut upper_bad = 0;
    for w in samples(1.2 + tau, UPPER_WINDOW_FACTOR * 1.2, 1000) {
        let d = rapidity_derivative(&p, w).map_err(err)?;
        if !(d < 0.0 && oracle(w) < 0.0) {
            upper_bad += 1;
        }
    }
    Ok((
        lower_bad + upper_bad == 0,
        format!("h' wrong-signed at {lower_bad}/1000 lower and {upper_bad}/1000 upper samples"),
    ))
}

fn residual_decay() -> Outcome {
    let m = CANONICAL;
    let p = MediumParams::canonical();
    let pair = gap_pair(&p, 0.1 * m.beta).map_err(err)?;
    let lengths = [1e3, 2e3, 4e3];
    let mut logs = Vec::new();
    for len in lengths {
        let q = p.with_length(len).map_err(err)?;
        let r =
            bae_residual(&q, &pair.string(), &pair.momenta(), &pair.frequencies()).map_err(err)?;
        logs.push(r.max_ln_abs());
    }
    let (_, slope) = line_fit(&lengths, &logs);
    let kappa = m.kappa(pair.pairs[0].xi);
    let e = rel(-slope, kappa);
    Ok((
        e < 0.02,
        format!(
            "slope {slope:.6} vs -kappa {:.6} (relative {e:.2e})",
            -kappa
        ),
    ))
}

fn one_particle() -> Outcome {
    let m = CANONICAL;
    let length = 1e4;
    let count = 200;
    let q = MediumParams::canonical().with_length(length).map_err(err)?;
    let roots = solve_one_particle_range(&q, Branch::Lower, 0, count + 1).map_err(err)?;
    let mut worst: f64 = 0.0;
    for &w in &roots[..count] {
        worst = worst.max(one_particle_residual(&q, w).map_err(err)?.max_abs());
    }
    // independent phase Phi = k L - 2 atan2(beta/2, h)
    let phase = |w: f64| m.k(w) * length - 2.0 * (0.5 * m.beta).atan2(m.h(w));
    let (lo, _) = branch_window(&q, Branch::Lower).map_err(err)?;
    let first = (phase(lo) / TAU).floor() + 1.0;
    let mut oracle_worst: f64 = 0.0;
    for (i, &w) in roots[..count].iter().enumerate() {
        let defect = phase(w) - TAU * (first + i as f64);
        oracle_worst = oracle_worst.max(defect.abs());
    }
    let cut = 0.5 * (roots[count - 1] + roots[count]);
    let winding = ((phase(cut) / TAU).floor() - (phase(lo) / TAU).floor()) as usize;
    let found = roots.iter().filter(|&&w| w > lo && w < cut).count();
    let ordered = roots.windows(2).all(|w| w[1] > w[0]);
    Ok((
        worst < 1e-10 && oracle_worst < 1e-10 && winding == found && found == count && ordered,
        format!(
            "max residual {worst:.2e} (oracle phase defect {oracle_worst:.2e}), \
             {found} roots vs winding {winding}"
        ),
    ))
}

fn convergence_order() -> Outcome {
    let betas = [1e-3, 5e-4, 2.5e-4];
    let ln_b: Vec<f64> = betas.iter().map(|b: &f64| b.ln()).collect();
    let mut exponents = Vec::new();
    for l in 1..=3usize {
        let mut devs = Vec::new();
        for beta in betas {
            let m = CANONICAL.with_beta(beta);
            let st = sector_at(beta).exact(l, 0.1 * beta).map_err(err)?;
            let dev = st
                .pairs
                .iter()
                .enumerate()
                .map(|(i, pair)| {
                    let xi0 = m.atom - m.spacing() * (l as f64 + 0.5 - (i + 1) as f64);
                    (pair.xi - xi0).abs()
                })
                .fold(0.0, f64::max);
            devs.push(dev.ln());
        }
        exponents.push(line_fit(&ln_b, &devs).1);
    }
    let pass = exponents.iter().all(|e| (e - 2.0).abs() <= 0.2);
    let listed: Vec<String> = exponents.iter().map(|e| format!("{e:.4}")).collect();
    Ok((
        pass,
        format!("exponents for l = 1, 2, 3: {}", listed.join(", ")),
    ))
}

fn effective_mass() -> Outcome {
    let m = CANONICAL;
    let s = sector_at(m.beta);
    let mut pass = true;
    let mut parts = Vec::new();
    for l in 1..=3usize {
        let lf = l as f64;
        let mut q2 = Vec::new();
        let mut eps = Vec::new();
        for i in 0..8 {
            let st = s.exact(l, 0.02 * m.beta * i as f64).map_err(err)?;
            q2.push(st.momentum_per_particle.powi(2));
            eps.push(st.energy_per_particle);
        }
        let (bottom, curvature) = line_fit(&q2, &eps);
        let eps0 = m.atom - 0.5 * m.spacing() * lf;
        let delta = m.b() * m.beta * m.beta * (4.0 * lf * lf - 1.0) / (12.0 * m.a().powi(3));
        let kp: f64 = (1..=l)
            .map(|j| {
                m.kappa_prime(m.atom - m.spacing() * (lf + 0.5 - j as f64))
                    .abs()
            })
            .sum();
        let mass = m.a() / (2.0 * m.b() * lf * lf) * kp * kp;
        let shift = (eps0 - bottom) / delta;
        let curv = 2.0 * curvature * mass;
        pass &= (shift - 1.0).abs() < 0.05 && (curv - 1.0).abs() < 0.05;
        parts.push(format!(
            "l={l} shift/Delta={shift:.4} curvature*m={curv:.4}"
        ));
    }
    Ok((pass, parts.join(", ")))
}

fn stability() -> Outcome {
    let s = sector_at(CANONICAL.beta);
    let mut bad_split = 0;
    let mut bad_hierarchy = 0;
    for l in 1..=30usize {
        for l1 in 1..l {
            if !(s.dissociation_energy(l, l1).map_err(err)? > 0.0) {
                bad_split += 1;
            }
        }
        let st = s.pinned(l).map_err(err)?;
        let u1 = st.pair_extraction_energy.ok_or("missing U_1")?;
        let ul = st.binding_energy.abs();
        let equal = (u1 - ul).abs() <= 1e-12 * u1;
        let ok = if l == 1 { equal } else { u1 > ul && !equal };
        if !ok {
            bad_hierarchy += 1;
        }
    }
    Ok((
        bad_split + bad_hierarchy == 0,
        format!(
            "{bad_split} non-positive U_d, {bad_hierarchy} U_1 vs |U_l| violations for l <= 30"
        ),
    ))
}

fn reality(s: &GapSector, p: &MediumParams) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    let mut record = |w: Vec<Complex64>| {
        let e: Complex64 = w.iter().sum();
        worst = worst.max(e.im.abs() / e.re.abs());
    };
    for n in [1, 2, 5] {
        record(ordinary_soliton(p, n, -0.5).map_err(err)?.frequencies());
    }
    for l in 1..=3 {
        for h in [0.0, 0.05 * p.beta(), 0.1 * p.beta()] {
            record(s.linear(l, h).map_err(err)?.frequencies());
            record(s.exact(l, h).map_err(err)?.frequencies());
        }
        record(s.pinned(l).map_err(err)?.constituent_frequencies());
    }
    Ok(worst)
}

fn structure() -> Outcome {
    let m = CANONICAL;
    let p = MediumParams::canonical();
    let s = sector_at(m.beta);
    let mut failed = Vec::new();

    let worst_im = reality(&s, &p)?;
    if !(worst_im < 1e-12) {
        failed.push(format!("energy reality {worst_im:.2e}"));
    }

    for n in 1..=50 {
        let st = build_string(n, 0.3, m.beta).map_err(err)?;
        let h = st.rapidities();
        let symmetric = (0..n).all(|j| h[j].conj() == h[n - 1 - j]);
        let spaced = h
            .windows(2)
            .all(|w| ((w[0].im - w[1].im) - m.beta).abs() < 1e-15);
        if !(symmetric && spaced) {
            failed.push(format!("string symmetry N={n}"));
        }
    }

    for l in 1..=3 {
        let st = s.linear(l, 0.1 * m.beta).map_err(err)?;
        if !check_nc(&st.string(), &st.momenta()).map_err(err)?.pass {
            failed.push(format!("NC fails for H>0, l={l}"));
        }
        if s.linear(l, -0.1 * m.beta).is_ok() || s.exact(l, -0.1 * m.beta).is_ok() {
            failed.push(format!("H<0 gap state accepted, l={l}"));
        }
        // the same momenta against the reflected string must fail
        let flipped = build_string(2 * l, -0.1 * m.beta, m.beta).map_err(err)?;
        let k: Vec<Complex64> = st.momenta().iter().map(|k| k.conj()).collect();
        if check_nc(&flipped, &k).map_err(err)?.pass {
            failed.push(format!("NC passes for H<0, l={l}"));
        }
    }

    let kappas: Vec<f64> = samples(1.0 + 1e-4, 1.2 - 1e-4, 500)
        .map(|x| p.kappa(x))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    if !kappas.windows(2).all(|w| w[1] < w[0]) {
        failed.push("kappa not strictly decreasing".into());
    }

    let sizes: Vec<f64> = (1..=s.l_max())
        .map(|l| s.linear(l, 0.0).map(|st| st.size))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    if !sizes.windows(2).all(|w| w[1] < w[0]) {
        failed.push("delta_l not decreasing".into());
    }

    let mut worst_d: f64 = 0.0;
    let diff = |f: &dyn Fn(f64) -> f64, x: f64| {
        let d = 1e-5 * x;
        (f(x + d) - f(x - d)) / (2.0 * d)
    };
    for x in [0.3, 0.5, 0.8, 1.3, 2.4] {
        let h = |w: f64| rapidity_real(&p, w).unwrap();
        let k = |w: f64| momentum_real(&p, w).unwrap();
        let eps = |w: f64| p.permittivity(w).unwrap();
        worst_d = worst_d.max(rel(rapidity_derivative(&p, x).map_err(err)?, diff(&h, x)));
        worst_d = worst_d.max(rel(momentum_derivative(&p, x).map_err(err)?, diff(&k, x)));
        worst_d = worst_d.max(rel(
            p.permittivity_derivative(x).map_err(err)?,
            m.eps_prime(x),
        ));
        worst_d = worst_d.max(rel(
            p.permittivity_derivative(x).map_err(err)?,
            diff(&eps, x),
        ));
    }
    for x in [1.04, 1.1, 1.16] {
        let kap = |w: f64| p.kappa(w).unwrap();
        worst_d = worst_d.max(rel(p.kappa_prime(x).map_err(err)?, diff(&kap, x)));
        worst_d = worst_d.max(rel(p.kappa_prime(x).map_err(err)?, m.kappa_prime(x)));
    }
    if !(worst_d < 1e-6) {
        failed.push(format!("derivative mismatch {worst_d:.2e}"));
    }

    Ok((
        failed.is_empty(),
        if failed.is_empty() {
            format!("max |Im E|/|E| {worst_im:.2e}, derivative error {worst_d:.2e}")
        } else {
            failed.join("; ")
        },
    ))
}

fn determinism() -> Outcome {
    let run = |threads: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_gapspec"))
            .args(args)
            .env("GAPSPEC_THREADS", threads)
            .output()
            .map(|o| o.stdout)
            .map_err(err)
    };
    let mut parts = Vec::new();
    let mut pass = true;
    let commands: [&[&str]; 2] = [&["validate"], &["band", "--l", "2", "--points", "100"]];
    for args in commands {
        let one = run("1", args)?;
        let same = ["4", "8"]
            .iter()
            .map(|t| run(t, args).map(|o| o == one))
            .collect::<Result<Vec<bool>, _>>()?;
        let ok = !one.is_empty() && same.iter().all(|&b| b);
        pass &= ok;
        parts.push(format!("{} ({} bytes) identical={ok}", args[0], one.len()));
    }
    Ok((pass, parts.join(", ")))
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            name: "formula reproduction",
            budget: Duration::from_secs(1),
            run: formula_reproduction,
        },
        Criterion {
            name: "attraction criterion",
            budget: Duration::from_secs(1),
            run: attraction,
        },
        Criterion {
            name: "BAE residual decay",
            budget: Duration::from_secs(5),
            run: residual_decay,
        },
        Criterion {
            name: "one-particle quantization",
            budget: Duration::from_secs(10),
            run: one_particle,
        },
        Criterion {
            name: "exact vs linear convergence",
            budget: Duration::from_secs(10),
            run: convergence_order,
        },
        Criterion {
            name: "effective mass and band width",
            budget: Duration::from_secs(30),
            run: effective_mass,
        },
        Criterion {
            name: "stability inequalities",
            budget: Duration::from_secs(1),
            run: stability,
        },
        Criterion {
            name: "structural invariants",
            budget: Duration::from_secs(5),
            run: structure,
        },
        Criterion {
            name: "determinism",
            budget: Duration::from_secs(60),
            run: determinism,
        },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (pass && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} [{}] {}: {} ({:.3} s of {} s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
