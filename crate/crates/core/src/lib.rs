//! Eigenvalue paths on manifolds of structured matrices.
//!
//! The crate builds one-parameter curves of symmetric, Hermitian,
//! skew-symmetric, skew-Hermitian, orthogonal, unitary and rectangular
//! matrices, follows their eigenvalues (or singular values) along the curve,
//! classifies close approaches as crossings or avoided crossings, and
//! estimates the codimension of the derogatory locus from the small-gap tail
//! of random ensembles.
//!
//! Everything numerical is generic over [`Scalar`] (`f64` and `f32`); the
//! aliases below fix the scalar to `f64`.

pub mod curves;
pub mod error;
pub mod gapstats;
pub mod numkernel;
pub mod pfaffian;
pub mod rng;
pub mod scalar;
pub mod structures;
pub mod tracking;

pub use error::{Error, Result};
pub use numkernel::{DenseMatrix, Field};
pub use rng::SampleStream;
pub use scalar::Scalar;
pub use structures::{CollisionClass, DetSign, StructureClass, StructureKind};

pub type Matrix = DenseMatrix<f64>;
pub type Matrix32 = DenseMatrix<f32>;
pub type Spectrum = structures::CanonicalSpectrum<f64>;
pub type Curve = curves::MatrixCurve<f64>;
pub type Path = tracking::SpectralPath<f64>;
pub type Event = tracking::GapEvent<f64>;
pub type Estimate = gapstats::CodimEstimate<f64>;
