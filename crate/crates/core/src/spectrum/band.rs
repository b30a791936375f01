//! Dispersion tables `epsilon_l(q)` and effective-mass fits.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::medium::MediumParams;
use crate::spectrum::gap::{GapSector, GapSolitonState};

#[derive(Debug, Clone, PartialEq)]
pub struct BandRow {
    pub carrying_rapidity: f64,
    /// Soliton momentum per particle from the quadratic model.
    pub q: Option<f64>,
    pub eps_corrected: Option<f64>,
    pub q_exact: Option<f64>,
    pub eps_exact: Option<f64>,
    /// Messages of failed evaluations at this point, if any.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandTable {
    pub n_pairs: usize,
    pub eps_linear: f64,
    pub band_halfwidth: f64,
    pub effective_mass: f64,
    /// Smallest tabulated `q` where the exact kinetic energy departs from
    /// `q^2 / 2m` by more than 10%.
    pub mass_validity_q: Option<f64>,
    pub rows: Vec<BandRow>,
}

fn row(sector: &GapSector, l: usize, carrying: f64) -> BandRow {
    let mut errors = Vec::new();
    let q = match sector.linear(l, carrying) {
        Ok(s) => Some(s.momentum_per_particle),
        Err(e) => {
            errors.push(format!("linear: {e}"));
            None
        }
    };
    let eps_corrected = match sector.corrected(l, carrying) {
        Ok(s) => Some(s.energy_per_particle),
        Err(e) => {
            errors.push(format!("corrected: {e}"));
            None
        }
    };
    let (q_exact, eps_exact) = match sector.exact(l, carrying) {
        Ok(s) => (Some(s.momentum_per_particle), Some(s.energy_per_particle)),
        Err(e) => {
            errors.push(format!("exact: {e}"));
            (None, None)
        }
    };
    BandRow {
        carrying_rapidity: carrying,
        q,
        eps_corrected,
        q_exact,
        eps_exact,
        error: (!errors.is_empty()).then(|| errors.join("; ")),
    }
}

/// Tabulates the `l`-pair soliton band over a grid of carrying rapidities.
/// Grid points are independent and evaluated in parallel; rows keep the
/// grid order. Failures at a point are recorded in that row.
pub fn band_structure(p: &MediumParams, l: usize, grid: &[f64]) -> Result<BandTable> {
    band_structure_in(&GapSector::new(p)?, l, grid)
}

pub fn band_structure_in(sector: &GapSector, l: usize, grid: &[f64]) -> Result<BandTable> {
    let rest = sector.linear(l, 0.0)?;
    let rows: Vec<BandRow> = grid.par_iter().map(|&h| row(sector, l, h)).collect();

    let mass = rest.effective_mass;
    let bottom = sector.exact(l, 0.0).ok().map(|s| s.energy_per_particle);
    let mass_validity_q = bottom.and_then(|bottom| {
        let mut departures: Vec<f64> = rows
            .iter()
            .filter_map(|r| match (r.q_exact, r.eps_exact) {
                (Some(q), Some(e)) if q > 0.0 => {
                    let quad = q * q / (2.0 * mass);
                    (((e - bottom) - quad).abs() > 0.1 * quad).then_some(q)
                }
                _ => None,
            })
            .collect();
        departures.sort_by(f64::total_cmp);
        departures.first().copied()
    });
    Ok(BandTable {
        n_pairs: l,
        eps_linear: rest.energy_per_particle,
        band_halfwidth: rest.band_halfwidth,
        effective_mass: mass,
        mass_validity_q,
        rows,
    })
}

/// Least-squares fit `epsilon = bottom + curvature q^2` of exact states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandFit {
    pub bottom: f64,
    pub curvature: f64,
    /// `epsilon^(0)_l - bottom`, to compare with `Delta_l`.
    pub depression: f64,
    /// `2 * curvature`, to compare with `1 / m_l`.
    pub inverse_mass: f64,
}

pub fn fit_band(sector: &GapSector, l: usize, carrying: &[f64]) -> Result<BandFit> {
    if carrying.len() < 2 {
        return Err(Error::InvalidParams(
            "a band fit needs at least two points".into(),
        ));
    }
    let states = carrying
        .iter()
        .map(|&h| sector.exact(l, h))
        .collect::<Result<Vec<GapSolitonState>>>()?;
    let xs: Vec<f64> = states
        .iter()
        .map(|s| s.momentum_per_particle * s.momentum_per_particle)
        .collect();
    let ys: Vec<f64> = states.iter().map(|s| s.energy_per_particle).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParams(
            "band fit needs distinct momenta".into(),
        ));
    }
    let curvature = sxy / sxx;
    let bottom = my - curvature * mx;
    let eps0 = sector.linear(l, 0.0)?.energy_per_particle;
    Ok(BandFit {
        bottom,
        curvature,
        depression: eps0 - bottom,
        inverse_mass: 2.0 * curvature,
    })
}
