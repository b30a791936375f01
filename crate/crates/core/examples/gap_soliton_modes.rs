//! The same gap soliton in linear, corrected and exact form.

use gapspec::spectrum::{GapSector, Mode};
use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical();
    let sector = GapSector::new(&p)?;
    let lin = sector.linearization();
    println!(
        "a = {:.9}  b = {:.6}  valid_radius = {:.3e}  l_max = {}",
        lin.a,
        lin.b,
        lin.valid_radius,
        sector.l_max()
    );

    let (l, carrying) = (2, 1e-4);
    for mode in [Mode::Linear, Mode::Corrected, Mode::Exact] {
        let s = sector.state(l, carrying, mode)?;
        let xis: Vec<String> = s.pairs.iter().map(|q| format!("{:.9}", q.xi)).collect();
        println!(
            "{:>9}: xi = [{}]  eps = {:.10}  q = {:.4e}",
            mode.label(),
            xis.join(", "),
            s.energy_per_particle,
            s.momentum_per_particle
        );
    }
    println!(
        "Delta_l = {:.4e}  m_l = {:.6}  E0 = {:.9}  U_d(l, 1) = {:.4e}",
        sector.band_halfwidth(l),
        sector.effective_mass(l)?,
        sector.linear_energy(l),
        sector.dissociation_energy(l, 1)?
    );
    Ok(())
}
