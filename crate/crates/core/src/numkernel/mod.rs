//! Dense real/complex matrices and the spectral kernels built on them.
//!
//! Every routine here is a pure function of its inputs. Real-field inputs
//! produce real-field outputs with exactly zero imaginary parts.

mod eigh;
mod lu;
mod matrix;
mod polar;
mod qr;
mod schur;
mod svd;

pub use eigh::{eig_selfadjoint, SelfAdjointEigen};
pub use lu::{determinant, Lu};
pub use matrix::{DenseMatrix, Field};
pub use polar::polar_unitary_factor;
pub use qr::qr_decompose;
pub use schur::{eig_general, eig_unitary_angles};
pub use svd::{svd, Svd};

pub(crate) use matrix::c;
pub(crate) use qr::{complete_basis, Reflector};
