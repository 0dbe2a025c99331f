//! Truncated power series and harmonic mappings on the unit disk.
//!
//! The crate builds harmonic maps `f = h + conj(g)` by the shear construction,
//! convolves them with analytic maps, and certifies on sampled compact
//! subdisks the positivity, nonvanishing, typical-realness and convexity
//! conditions under which such convolutions stay univalent and convex in a
//! fixed direction.
//!
//! * [`series`]: truncated complex Taylor series arithmetic.
//! * [`harmonic`]: harmonic maps, dilatation, shear construction, convolution.
//! * [`families`]: the concrete prefunction families, convolvers and dilatations.
//! * [`verifiers`]: grid certification checks producing [`VerificationReport`]s.
//! * [`app`]: expression language, reproduction presets, SVG plots and the
//!   command implementations behind the `hconv` binary.

pub mod app;
pub mod error;
pub mod families;
pub mod harmonic;
pub mod series;
pub mod verifiers;

pub use error::{Error, Result};
pub use harmonic::{shear_construct, ConeParams, Direction, DiskMap, HarmonicMap};
pub use series::{DiskPoint, TruncatedSeries};
pub use verifiers::{SamplingGrid, VerificationReport};
