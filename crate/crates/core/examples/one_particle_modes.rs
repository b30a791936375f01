//! Real one-particle modes at a finite quantization radius.

use gapspec::bae::{branch_window, mode_count, one_particle_residual, solve_one_particle_range};
use gapspec::{Branch, MediumParams};

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical().with_length(1e4)?;
    for branch in [Branch::Lower, Branch::Upper] {
        let (lo, hi) = branch_window(&p, branch)?;
        println!(
            "{} branch: {} modes in ({lo:.3e}, {hi:.3e})",
            branch.label(),
            mode_count(&p, lo, hi)?
        );
    }
    let roots = solve_one_particle_range(&p, Branch::Lower, 100, 5)?;
    for (m, w) in (100..).zip(&roots) {
        println!(
            "m = {m}: omega = {w:.15}  residual {:.2e}",
            one_particle_residual(&p, *w)?.max_abs()
        );
    }
    Ok(())
}
