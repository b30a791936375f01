//! A single correlated gap pair and its sign-condition check.

use gapspec::bae::check_nc;
use gapspec::spectrum::gap_pair;
use gapspec::MediumParams;

fn main() -> gapspec::Result<()> {
    let p = MediumParams::canonical();
    for carrying in [1e-6, 1e-4, 5e-4] {
        let s = gap_pair(&p, carrying)?;
        let pair = s.pairs[0];
        let nc = check_nc(&s.string(), &s.momenta())?;
        println!(
            "H = {carrying:.1e}: xi = {:.9}  eta = {:.4e}  q = {:.4e}  kappa = {:.6}  size = {:.6}  NC {}",
            pair.xi,
            pair.eta,
            pair.q,
            pair.kappa,
            s.size,
            if nc.pass { "pass" } else { "fail" }
        );
    }
    println!("H = -1e-4: {}", gap_pair(&p, -1e-4).unwrap_err());
    Ok(())
}
