//! Many-particle spectrum of a two-level impurity atom in an isotropic
//! frequency-gap medium, from single Bethe strings.
//!
//! The crate is organized bottom-up:
//!
//! * [`medium`]: permittivity, refractive and decay indices, branch labels.
//! * [`stringmap`]: the momentum and rapidity maps and their continuations.
//! * [`bae`]: strings, the sign condition, residuals, one-particle modes.
//! * [`spectrum`]: ordinary solitons, gap pairs and solitons, pinned solitons,
//!   band tables.
//! * [`cli`]: configuration, report emission and the `gapspec` front end.
//!
//! ```
//! use gapspec::{medium::MediumParams, spectrum::GapSector};
//!
//! let p = MediumParams::canonical();
//! let sector = GapSector::new(&p).unwrap();
//! let soliton = sector.linear(5, 0.0).unwrap();
//! assert!((soliton.total_energy - sector.linear_energy(5)).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is deliberate: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bae;
pub mod cli;
pub mod error;
pub mod medium;
mod roots;
pub mod spectrum;
pub mod stringmap;
pub mod validate;

pub use error::{Error, Result};
pub use medium::{Branch, MediumParams};
