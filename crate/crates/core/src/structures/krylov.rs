use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::numkernel::{eig_selfadjoint, svd, DenseMatrix};
use crate::scalar::Scalar;

use super::class::StructureClass;
use super::ensemble::validate;

/// Checks the Krylov structure of the left eigenvectors of a symmetric
/// tridiagonal matrix.
///
/// With `V A = D V`, `V` orthogonal and `D` diagonal, the leading `j` columns
/// of `V` must span the Krylov space of `D` started from the first column of
/// `V`, for every `j`. Returns whether the largest principal angle between the
/// two subspaces stays below `1e-8` for all `j`.
pub fn verify_krylov_span<T: Scalar>(a: &DenseMatrix<T>) -> Result<bool> {
    a.ensure_finite()?;
    if !a.is_square() || a.rows() == 0 {
        return Err(invalid("expected a nonempty square matrix"));
    }
    let n = a.rows();
    if !validate(a, &StructureClass::symmetric(n))?.valid || a.band_defect(1) != T::zero() {
        return Err(invalid("expected a real symmetric tridiagonal matrix"));
    }
    let scale = a.max_abs().max(T::min_positive_value());
    for i in 0..n - 1 {
        if a[(i, i + 1)].norm() <= T::tol(1e-10) * scale {
            return Err(Error::DegenerateInput(format!("off-diagonal entry {i} vanishes")));
        }
    }
    let eig = eig_selfadjoint(a)?;
    let lam = &eig.values;
    let lam_scale = lam.iter().fold(T::one(), |m, x| m.max(x.abs()));
    if lam.windows(2).any(|w| w[1] - w[0] <= T::tol(1e-10) * lam_scale) {
        return Err(Error::DegenerateInput("eigenvalues are not distinct".into()));
    }

    // rows of V are eigenvectors, so V = W^T
    let v = eig.vectors.transpose();
    let start = v.column(0);

    // orthonormal Krylov basis of D from `start`, twice-orthogonalized
    let mut basis: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    let mut next = start;
    for j in 0..n {
        if j > 0 {
            next = basis[j - 1].iter().zip(lam).map(|(z, &l)| *z * l).collect();
        }
        for _ in 0..2 {
            for b in &basis {
                let dot = b.iter().zip(&next).fold(Complex::new(T::zero(), T::zero()), |s, (x, y)| s + x.conj() * y);
                for (y, x) in next.iter_mut().zip(b) {
                    *y -= x * dot;
                }
            }
        }
        let norm = next.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            return Ok(false);
        }
        basis.push(next.iter().map(|z| z / norm).collect());
    }
    let mut krylov = DenseMatrix::zeros(n, n, crate::Field::Real);
    for (j, col) in basis.iter().enumerate() {
        krylov.set_column(j, col);
    }

    for j in 1..=n {
        let vj = v.columns(0, j);
        let kj = krylov.columns(0, j);
        let residual = &kj - &vj.matmul(&vj.adjoint().matmul(&kj));
        let sin_max = svd(&residual)?.sigma[0];
        if sin_max > T::tol(1e-8) {
            return Ok(false);
        }
    }
    Ok(true)
}
