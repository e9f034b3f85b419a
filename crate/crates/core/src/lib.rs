//! Population-coding figures of merit for unitary metrology models.
//!
//! - [`rep_core`]: exact irrep decompositions of `n`-fold tensor powers for
//!   the multi-phase torus and `SU(t)`.
//! - [`capacity`]: mutual-information capacities, optimal inputs, closed
//!   forms and the gapped-partition lower bound.
//! - [`distinguish`]: Rényi bounds on the number of distinguishable group
//!   elements and estimation-radius bounds.
//! - [`oracle`]: a dense-matrix simulator used to check all of the above at
//!   small `n`.
//!
//! Real-valued results are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

pub mod capacity;
pub mod distinguish;
pub mod error;
pub mod oracle;
pub mod rep_core;
pub mod scalar;

pub use error::{Error, Result};
pub use rep_core::{Decomposition, IrrepEntry, Label, Model, Partition, RefDim, WeightVector};
pub use scalar::Real;

/// Exact probability weights.
pub type Rational = num_rational::BigRational;
/// Exact dimensions and multiplicities.
pub type Natural = num_bigint::BigUint;

pub type CapacityReport = capacity::CapacityReport<f64>;
pub type CapacityReport32 = capacity::CapacityReport<f32>;
pub type RenyiBounds = distinguish::RenyiBounds<f64>;
pub type RenyiBounds32 = distinguish::RenyiBounds<f32>;
pub type LatticeCodebook = distinguish::LatticeCodebook<f64>;
pub type GappedBound = capacity::GappedBound<f64>;
