//! Finite-radius Bethe residuals of a gap pair decay like exp(-kappa L).

use gapspec::bae::{bae_residual, build_string};
use gapspec::spectrum::GapSector;
use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical();
    let state = GapSector::new(&p)?.exact(1, 1e-4)?;
    let kappa = state.pairs[0].kappa;
    let mut previous: Option<(f64, f64)> = None;
    for len in [250.0, 500.0, 1e3, 2e3, 4e3] {
        let q = p.with_length(len)?;
        let r = bae_residual(&q, &state.string(), &state.momenta(), &state.frequencies())?;
        let ln = r.max_ln_abs();
        let slope = previous.map_or(String::new(), |(l0, v0)| {
            format!("  slope {:.6}", (ln - v0) / (len - l0))
        });
        println!("L = {len:>6}: ln|residual| = {ln:.4}{slope}");
        previous = Some((len, ln));
    }
    println!("-kappa = {:.6}", -kappa);

    let q = p.with_length(1e3)?;
    let shifted = build_string(2, state.carrying_rapidity + 1e-3, p.beta())?;
    let r = bae_residual(&q, &shifted, &state.momenta(), &state.frequencies())?;
    println!(
        "string shifted by 1e-3: mapping defect {:.3e}",
        r.mapping_defect
    );
    Ok(())
}
