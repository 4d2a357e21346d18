use super::matrix::DenseMatrix;
use super::svd::svd;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Unitary factor `U_p` of the polar decomposition `A = U_p P` of a nonsingular
/// square matrix, formed as `U V^H` from the singular value decomposition.
pub fn polar_unitary_factor<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    a.ensure_finite()?;
    a.ensure_square()?;
    let s = svd(a)?;
    let smax = s.sigma.first().copied().unwrap_or(T::zero());
    let smin = s.sigma.last().copied().unwrap_or(T::zero());
    if a.rows() > 0 && smin <= T::tol(1e-12) * smax {
        return Err(Error::SingularInput { sigma_min: smin.as_f64() });
    }
    Ok(s.u.matmul(&s.v.adjoint()).with_field(a.field()))
}
