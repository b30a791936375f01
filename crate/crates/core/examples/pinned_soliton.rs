//! Odd solitons localized at the atom and their binding energetics.

use gapspec::spectrum::pinned_soliton;
use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical();
    println!("{:>3} {:>14} {:>12} {:>12}", "l", "E", "U_l", "U_1");
    for l in 0..=5 {
        let s = pinned_soliton(&p, l)?;
        println!(
            "{l:>3} {:>14.9} {:>12.4e} {:>12}",
            s.total_energy,
            s.binding_energy,
            s.pair_extraction_energy
                .map_or("-".to_string(), |u| format!("{u:.4e}"))
        );
    }
    Ok(())
}
