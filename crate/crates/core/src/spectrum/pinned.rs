use num_complex::Complex64;

use crate::bae::{build_string, BetheString};
use crate::error::{Error, Result};
use crate::medium::MediumParams;
use crate::spectrum::gap::GapSector;
use crate::stringmap::gap_sheet_momentum;

/// Odd string of `2l + 1` particles at `H -> 0+`: the polariton-atom bound
/// state at `c` plus `l` motionless pairs deformed by it.
#[derive(Debug, Clone, PartialEq)]
pub struct PinnedSoliton {
    pub n_pairs: usize,
    pub beta: f64,
    /// `xi_0 = c`, then `xi_j = c - (beta/a)(l - j + 1)` for `j = 1..l`.
    pub frequencies: Vec<f64>,
    pub total_energy: f64,
    /// `U_l = E^(p)_l - (c + E^(0)_l) = -(beta/a) l`.
    pub binding_energy: f64,
    /// `U_1 = E^(p)_{l-1} + E^(0)_1 - E^(p)_l = (beta/a)(2l - 1)`; absent for `l = 0`.
    pub pair_extraction_energy: Option<f64>,
    kappas: Vec<f64>,
}

impl PinnedSoliton {
    pub fn n_particles(&self) -> usize {
        2 * self.n_pairs + 1
    }

    pub fn string(&self) -> BetheString {
        build_string(self.n_particles(), 0.0, self.beta).expect("validated on construction")
    }

    /// Real constituent frequencies in string order (each pair frequency
    /// appears twice, the atom once in the middle).
    pub fn constituent_frequencies(&self) -> Vec<Complex64> {
        let pairs = &self.frequencies[1..];
        pairs
            .iter()
            .chain(std::iter::once(&self.frequencies[0]))
            .chain(pairs.iter().rev())
            .map(|&x| Complex64::new(x, 0.0))
            .collect()
    }

    /// Purely imaginary momenta `+/- i kappa(xi_j)`; the bound state carries
    /// `+i kappa(c)`.
    pub fn constituent_momenta(&self) -> Vec<Complex64> {
        let pairs = &self.kappas[1..];
        let up = pairs.iter().map(|&k| Complex64::new(0.0, k));
        let mid = std::iter::once(Complex64::new(0.0, self.kappas[0]));
        let down = pairs.iter().rev().map(|&k| Complex64::new(0.0, -k));
        up.chain(mid).chain(down).collect()
    }
}

impl GapSector {
    pub fn pinned(&self, l: usize) -> Result<PinnedSoliton> {
        let l_max = self.pinned_l_max();
        if l > l_max {
            return Err(Error::LmaxExceeded { l, l_max });
        }
        let p = self.params();
        let frequencies: Vec<f64> = (0..=l).map(|j| self.pinned_frequency(l, j)).collect();
        let kappas = frequencies
            .iter()
            .map(|&x| gap_sheet_momentum(p, Complex64::new(x, 0.0), 1.0).im)
            .collect();
        let spacing = self.linearization().spacing(p.beta());
        Ok(PinnedSoliton {
            n_pairs: l,
            beta: p.beta(),
            frequencies,
            total_energy: self.pinned_energy(l),
            binding_energy: 0.0 - spacing * l as f64,
            pair_extraction_energy: (l >= 1).then(|| spacing * (2 * l - 1) as f64),
            kappas,
        })
    }
}

pub fn pinned_soliton(p: &MediumParams, l: usize) -> Result<PinnedSoliton> {
    GapSector::new(p)?.pinned(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bae::check_nc;

    #[test]
    fn single_particle_is_the_bound_state() {
        let p = MediumParams::canonical();
        let s = pinned_soliton(&p, 0).unwrap();
        assert_eq!(s.total_energy, p.omega12());
        assert_eq!(s.binding_energy, 0.0);
        assert!(s.pair_extraction_energy.is_none());
        assert_eq!(s.constituent_frequencies().len(), 1);
    }

    #[test]
    fn pinned_string_passes_sign_condition() {
        let s = pinned_soliton(&MediumParams::canonical(), 3).unwrap();
        let nc = check_nc(&s.string(), &s.constituent_momenta()).unwrap();
        assert!(nc.pass);
        assert!(nc.exempt[3]);
        let w = s.constituent_frequencies();
        let total: f64 = w.iter().map(|z| z.re).sum();
        assert!((total - s.total_energy).abs() < 1e-13);
    }

    #[test]
    fn pinned_rejects_l_beyond_window() {
        let sector = GapSector::new(&MediumParams::canonical()).unwrap();
        let l_max = sector.pinned_l_max();
        assert!(sector.pinned(l_max).is_ok());
        assert!(matches!(
            sector.pinned(l_max + 1),
            Err(Error::LmaxExceeded { .. })
        ));
    }
}
