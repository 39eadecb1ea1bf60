//! Representation-theoretic machinery behind the debiased Keyl estimator:
//! Young-diagram transformations, weak Schur sampling statistics, exact
//! Clebsch-Gordan coefficients, Young's orthogonal form, and verifiers for
//! the first- and second-moment identities, plus toy-scale dense checks.

pub mod clebsch_gordan;
pub mod dense;
pub mod error;
pub mod moments;
pub mod partitions;
pub mod report;
pub mod rsk;
pub mod scalar;
pub mod schur_stats;
pub mod sqrt_rational;
pub mod sweep;
pub mod tableaux;
pub mod yor;

pub use dense::{DenseOperator, SchurTransform};
pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use moments::{MomentBlock, MomentKind, TwoStepTable};
pub use partitions::{Block, LegalSpectrum, Partition, SignedShape, Transform};
pub use report::{Record, Report};
pub use scalar::Scalar;
pub use schur_stats::{Spectrum, WssDistribution};
pub use sqrt_rational::SqrtRational;
pub use tableaux::{HorizontalStrip, Ssyt, Syt};

/// Exact rational scalar used by all identity checks.
pub type Rational = BigRational;

pub type SpectrumQ = Spectrum<Rational>;
pub type SpectrumF64 = Spectrum<f64>;
pub type SpectrumF32 = Spectrum<f32>;
pub type WssDistributionQ = WssDistribution<Rational>;
pub type WssDistributionF64 = WssDistribution<f64>;
pub type WssDistributionF32 = WssDistribution<f32>;
pub type DenseOperatorF64 = DenseOperator<f64>;
pub type DenseOperatorF32 = DenseOperator<f32>;
pub type SchurTransformF64 = SchurTransform<f64>;
pub type SchurTransformF32 = SchurTransform<f32>;
