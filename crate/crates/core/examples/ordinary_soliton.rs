//! Bound complexes of lower-branch polaritons for a few particle numbers.

use gapspec::spectrum::ordinary_soliton;
use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical();
    let carrying = -0.5;
    for n in [1, 2, 3, 10] {
        let s = ordinary_soliton(&p, n, carrying)?;
        println!(
            "N = {n:>2}: Omega = {:.9}  E = {:.9}  Gamma = {:.4e}  K = {:.6}  Q = {:.4e}{}",
            s.carrier,
            s.energy,
            s.width,
            s.momentum,
            s.decay,
            if s.strained_continuation {
                "  (strained)"
            } else {
                ""
            }
        );
    }
    for w in ordinary_soliton(&p, 3, carrying)?.frequencies() {
        println!("  omega_j = {:.9} {:+.4e} i", w.re, w.im);
    }

    // positive carrying rapidity has no lower-branch soliton
    println!("H = +0.2: {}", ordinary_soliton(&p, 3, 0.2).unwrap_err());
    Ok(())
}
