//! Boltzmann Classifier: per-class centroids on MinMax-scaled features,
//! an L1 (or L2) energy per class, and class probabilities proportional
//! to exp(-E/kT).
//!
//! The math is generic over the floating-point scalar; `f64` aliases are
//! exported at the crate root.

pub mod data;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod matrix;
pub mod model;
pub mod pdbx;
pub mod scalar;
pub mod scaler;

pub use error::{Error, Result};
pub use model::Metric;
pub use scalar::Scalar;

/// Concrete f64 aliases for the generic core types.
pub type MatrixF64 = matrix::Matrix<f64>;
pub type LabeledDatasetF64 = dataset::LabeledDataset<f64>;
pub type ScalerParamsF64 = scaler::ScalerParams<f64>;
pub type BoltzmannModelF64 = model::BoltzmannModel<f64>;
pub type ProbabilityVectorF64 = model::ProbabilityVector<f64>;

pub type MatrixF32 = matrix::Matrix<f32>;
pub type LabeledDatasetF32 = dataset::LabeledDataset<f32>;
pub type ScalerParamsF32 = scaler::ScalerParams<f32>;
pub type BoltzmannModelF32 = model::BoltzmannModel<f32>;
pub type ProbabilityVectorF32 = model::ProbabilityVector<f32>;
