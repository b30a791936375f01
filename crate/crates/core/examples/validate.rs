//! The invariant suite used by `gapspec validate`, on a non-canonical medium.

use gapspec::validate::run_suite;
use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::new(1.0, 1.5, 1.3, 5e-4)?;
    let report = run_suite(&p);
    print!("{}", report.render());
    Ok(())
}
