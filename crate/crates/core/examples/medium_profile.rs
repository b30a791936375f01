//! Permittivity and decay constants across the three frequency regions.

use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical();
    println!(
        "{:>8} {:>6} {:>12} {:>12} {:>12}",
        "omega", "branch", "eps", "n | nu", "kappa"
    );
    for w in [0.2, 0.6, 0.95, 1.02, 1.05, 1.1, 1.15, 1.19, 1.3, 2.0] {
        let branch = p.classify(w);
        let eps = p.permittivity(w)?;
        match branch {
            gapspec::Branch::Gap => println!(
                "{w:>8.3} {:>6} {eps:>12.6} {:>12.6} {:>12.6}",
                branch.label(),
                p.gap_decay_index(w)?,
                p.kappa(w)?
            ),
            _ => println!(
                "{w:>8.3} {:>6} {eps:>12.6} {:>12.6} {:>12}",
                branch.label(),
                p.refractive_index(w)?,
                "-"
            ),
        }
    }

    // absolute units are normalized on construction
    let q = MediumParams::new(2.0e15, 2.4e15, 2.2e15, 1e-3)?;
    println!(
        "normalized omega_par = {}, omega12 = {}",
        q.omega_par(),
        q.omega12()
    );
    Ok(())
}
