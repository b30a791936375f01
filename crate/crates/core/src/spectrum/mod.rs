//! Physical spectral objects built from Bethe strings.
//!
//! * [`ordinary`]: bound complexes of lower-branch polaritons (`H < 0`).
//! * [`gap`]: correlated gap pairs and mobile gap solitons (`H >= 0`),
//!   in linear, quadratically corrected and exact form.
//! * [`pinned`]: odd strings at `H -> 0+`, localized at the atom.
//! * [`band`]: dispersion tables and effective-mass fits.

pub mod band;
pub mod gap;
pub mod ordinary;
pub mod pinned;

pub use band::{band_structure, band_structure_in, fit_band, BandFit, BandRow, BandTable};
pub use gap::{
    dissociation_energy, gap_pair, gap_soliton, gap_soliton_corrected, gap_soliton_exact,
    gap_soliton_linear, GapPair, GapSector, GapSolitonState, Mode, SolverSettings,
};
pub use ordinary::{ordinary_candidate, ordinary_soliton, OrdinarySoliton};
pub use pinned::{pinned_soliton, PinnedSoliton};
