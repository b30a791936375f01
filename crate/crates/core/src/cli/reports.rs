//! Conversion of spectral objects into emit-ready reports.

use num_complex::Complex64;

use crate::cli::emit::{freq, plain, Field, Meta, Report, Value};
use crate::medium::{Branch, MediumParams};
use crate::spectrum::{BandTable, GapSector, GapSolitonState, OrdinarySoliton, PinnedSoliton};

fn meta(p: &MediumParams, sector: Option<&GapSector>, mode: Option<crate::spectrum::Mode>) -> Meta {
    Meta {
        params: *p,
        mode,
        valid_radius: sector.map(|s| s.linearization().valid_radius),
        l_max: sector.map(|s| s.l_max()),
    }
}

/// Evenly spaced points including both ends.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

pub fn medium_report(p: &MediumParams, grid: &[f64]) -> Report {
    let rows = grid
        .iter()
        .map(|&w| {
            let branch = p.classify(w);
            let in_gap = branch == Branch::Gap;
            let outside = matches!(branch, Branch::Lower | Branch::Upper);
            vec![
                w.into(),
                branch.label().into(),
                p.permittivity(w).ok().into(),
                outside.then(|| p.refractive_index(w).ok()).flatten().into(),
                in_gap.then(|| p.gap_decay_index(w).ok()).flatten().into(),
                in_gap.then(|| p.kappa(w).ok()).flatten().into(),
                in_gap.then(|| p.kappa_prime(w).ok()).flatten().into(),
            ]
        })
        .collect();
    Report {
        kind: "medium",
        meta: meta(p, GapSector::new(p).ok().as_ref(), None),
        columns: vec![
            freq("omega"),
            plain("branch"),
            plain("eps"),
            plain("n"),
            plain("nu"),
            plain("kappa"),
            plain("kappa_prime"),
        ],
        rows,
        summary: Vec::new(),
    }
}

pub fn ordinary_report(p: &MediumParams, s: &OrdinarySoliton) -> Report {
    let rows = constituent_rows(&s.frequencies(), &s.momenta(), s.string().rapidities());
    Report {
        kind: "ordinary",
        meta: meta(p, GapSector::new(p).ok().as_ref(), None),
        columns: constituent_columns(),
        rows,
        summary: vec![
            (plain("n_particles"), s.n_particles.into()),
            (plain("carrying_rapidity"), s.carrying_rapidity.into()),
            (freq("carrier"), s.carrier.into()),
            (freq("energy"), s.energy.into()),
            (freq("width"), s.width.into()),
            (plain("momentum"), s.momentum.into()),
            (plain("decay"), s.decay.into()),
            (
                plain("strained_continuation"),
                s.strained_continuation.into(),
            ),
        ],
    }
}

fn constituent_rows(w: &[Complex64], k: &[Complex64], h: &[Complex64]) -> Vec<Vec<Value>> {
    w.iter()
        .zip(k)
        .zip(h)
        .enumerate()
        .map(|(j, ((w, k), h))| {
            vec![
                (j + 1).into(),
                w.re.into(),
                w.im.into(),
                k.re.into(),
                k.im.into(),
                h.re.into(),
                h.im.into(),
            ]
        })
        .collect()
}

fn constituent_columns() -> Vec<Field> {
    vec![
        plain("j"),
        freq("omega_re"),
        freq("omega_im"),
        plain("k_re"),
        plain("k_im"),
        plain("rapidity_re"),
        plain("rapidity_im"),
    ]
}

pub fn gap_report(kind: &'static str, sector: &GapSector, s: &GapSolitonState) -> Report {
    let rows = constituent_rows(&s.frequencies(), &s.momenta(), s.string().rapidities());
    Report {
        kind,
        meta: meta(sector.params(), Some(sector), Some(s.mode)),
        columns: constituent_columns(),
        rows,
        summary: vec![
            (plain("n_pairs"), s.n_pairs.into()),
            (plain("carrying_rapidity"), s.carrying_rapidity.into()),
            (plain("mode"), s.mode.label().into()),
            (freq("energy_per_particle"), s.energy_per_particle.into()),
            (freq("total_energy"), s.total_energy.into()),
            (freq("band_halfwidth"), s.band_halfwidth.into()),
            (plain("effective_mass"), s.effective_mass.into()),
            (plain("size"), s.size.into()),
            (
                plain("momentum_per_particle"),
                s.momentum_per_particle.into(),
            ),
        ],
    }
}

pub fn pinned_report(sector: &GapSector, s: &PinnedSoliton) -> Report {
    let rows = constituent_rows(
        &s.constituent_frequencies(),
        &s.constituent_momenta(),
        s.string().rapidities(),
    );
    Report {
        kind: "pinned",
        meta: meta(sector.params(), Some(sector), None),
        columns: constituent_columns(),
        rows,
        summary: vec![
            (plain("n_pairs"), s.n_pairs.into()),
            (freq("total_energy"), s.total_energy.into()),
            (freq("binding_energy"), s.binding_energy.into()),
            (
                freq("pair_extraction_energy"),
                s.pair_extraction_energy.into(),
            ),
        ],
    }
}

pub fn band_report(sector: &GapSector, t: &BandTable) -> Report {
    let rows = t
        .rows
        .iter()
        .map(|r| {
            vec![
                r.carrying_rapidity.into(),
                r.q.into(),
                r.eps_corrected.into(),
                r.q_exact.into(),
                r.eps_exact.into(),
                r.error.clone().into(),
            ]
        })
        .collect();
    Report {
        kind: "band",
        meta: meta(sector.params(), Some(sector), None),
        columns: vec![
            plain("carrying_rapidity"),
            plain("q"),
            freq("eps_corrected"),
            plain("q_exact"),
            freq("eps_exact"),
            plain("error"),
        ],
        rows,
        summary: vec![
            (plain("n_pairs"), t.n_pairs.into()),
            (freq("eps_linear"), t.eps_linear.into()),
            (freq("band_halfwidth"), t.band_halfwidth.into()),
            (plain("effective_mass"), t.effective_mass.into()),
            (plain("mass_validity_q"), t.mass_validity_q.into()),
        ],
    }
}
