//! Soliton band table and a small-momentum fit of the exact energies.

use gapspec::cli::reports::linspace;
use gapspec::spectrum::{band_structure_in, fit_band, GapSector};
use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical();
    let sector = GapSector::new(&p)?;
    let l = 1;
    let table = band_structure_in(&sector, l, &linspace(0.0, 1e-3, 11))?;
    println!(
        "eps0 = {:.10}  Delta = {:.4e}  m = {:.6}",
        table.eps_linear, table.band_halfwidth, table.effective_mass
    );
    for r in &table.rows {
        println!(
            "H = {:.1e}  q = {:.4e}  corrected = {}  exact = {}",
            r.carrying_rapidity,
            r.q.unwrap_or(f64::NAN),
            r.eps_corrected.map_or("-".into(), |e| format!("{e:.10}")),
            r.eps_exact.map_or("-".into(), |e| format!("{e:.10}")),
        );
    }
    if let Some(q) = table.mass_validity_q {
        println!("quadratic dispersion off by more than 10% from q = {q:.4e}");
    }

    let grid: Vec<f64> = (0..8).map(|i| 2e-5 * i as f64).collect();
    for l in 1..=3 {
        let fit = fit_band(&sector, l, &grid)?;
        println!(
            "l = {l}: shift / Delta = {:.4}  fitted 1/m * m_l = {:.4}",
            fit.depression / sector.band_halfwidth(l),
            fit.inverse_mass * sector.effective_mass(l)?
        );
    }
    Ok(())
}
