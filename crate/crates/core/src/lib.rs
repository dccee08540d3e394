//! Exact Bott-Borel-Weil computations on type A flag varieties and `(N_p)`
//! certificates for isotropic and G2 flag varieties embedded in them.

mod bigdec;
pub mod bott;
pub mod configs;
pub mod error;
pub mod geometry;
pub mod par;
pub mod partitions;
pub mod plethysm;
pub mod random;
pub mod schur;
pub mod syzygy;
pub mod verify;

pub use bott::{bbw_cohomology, BlockedWeight, CohomologyResult};
pub use error::{Error, Result};
pub use geometry::{FlagShape, LineBundleCoeffs, VarietySpec};
pub use par::Strategy;
pub use partitions::{DominantWeight, Partition};
pub use syzygy::{np_certify, np_threshold, NpCertificate, ThresholdFamily};
