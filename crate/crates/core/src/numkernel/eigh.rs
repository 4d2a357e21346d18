use num_complex::Complex;

use super::matrix::{c, cone, czero, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Eigendecomposition `A = V diag(values) V^H` of a self-adjoint matrix.
#[derive(Debug, Clone)]
pub struct SelfAdjointEigen<T: Scalar> {
    /// Ascending.
    pub values: Vec<T>,
    /// Unitary; column `j` belongs to `values[j]`.
    pub vectors: DenseMatrix<T>,
}

/// 2x2 unitary `V` with `V^H [[alpha, gamma], [conj(gamma), beta]] V` diagonal.
pub(crate) fn jacobi_rotation<T: Scalar>(alpha: T, beta: T, gamma: Complex<T>) -> [[Complex<T>; 2]; 2] {
    let g = gamma.norm();
    if g == T::zero() {
        return [[cone(), czero()], [czero(), cone()]];
    }
    let phase = gamma.conj() / g;
    let theta = (beta - alpha) / (T::lit(2.0) * g);
    let t =
        if theta == T::zero() { T::one() } else { theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt()) };
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;
    [[c(cs, T::zero()), c(sn, T::zero())], [phase * (-sn), phase * cs]]
}

/// `A <- V^H A V` restricted to the `(p, q)` plane.
pub(crate) fn rotate_two_sided<T: Scalar>(a: &mut DenseMatrix<T>, p: usize, q: usize, v: &[[Complex<T>; 2]; 2]) {
    let n = a.rows();
    for i in 0..n {
        let (x, y) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = x * v[0][0] + y * v[1][0];
        a[(i, q)] = x * v[0][1] + y * v[1][1];
    }
    for j in 0..n {
        let (x, y) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = v[0][0].conj() * x + v[1][0].conj() * y;
        a[(q, j)] = v[0][1].conj() * x + v[1][1].conj() * y;
    }
}

/// `M <- M V` on columns `p, q`.
pub(crate) fn rotate_columns<T: Scalar>(m: &mut DenseMatrix<T>, p: usize, q: usize, v: &[[Complex<T>; 2]; 2]) {
    for i in 0..m.rows() {
        let (x, y) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = x * v[0][0] + y * v[1][0];
        m[(i, q)] = x * v[0][1] + y * v[1][1];
    }
}

/// Eigenvalues and eigenvectors of a Hermitian (or real symmetric) matrix by
/// cyclic two-sided Jacobi rotations.
pub fn eig_selfadjoint<T: Scalar>(a: &DenseMatrix<T>) -> Result<SelfAdjointEigen<T>> {
    a.ensure_finite()?;
    if !a.is_square() {
        return Err(Error::StructureViolation {
            what: format!("expected a square matrix, got {}x{}", a.rows(), a.cols()),
            violation: f64::INFINITY,
        });
    }
    let norm = a.frobenius_norm();
    let defect = a.hermitian_defect();
    if defect > T::tol(1e-12) * norm {
        return Err(Error::StructureViolation {
            what: "matrix is not self-adjoint".into(),
            violation: defect.as_f64(),
        });
    }

    let n = a.rows();
    let field = a.field();
    let mut work = a.hermitian_part();
    let mut vecs = DenseMatrix::from_fn(n, n, field, |i, j| if i == j { cone() } else { czero() });
    let target = T::epsilon() * norm;

    for _sweep in 0..64 {
        let off: T = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| work[(p, q)].norm_sqr())
            .sum::<T>()
            .sqrt();
        if off <= target || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let gamma = work[(p, q)];
                if gamma.norm() == T::zero() {
                    continue;
                }
                let v = jacobi_rotation(work[(p, p)].re, work[(q, q)].re, gamma);
                rotate_two_sided(&mut work, p, q, &v);
                work[(p, q)] = czero();
                work[(q, p)] = czero();
                work[(p, p)].im = T::zero();
                work[(q, q)].im = T::zero();
                rotate_columns(&mut vecs, p, q, &v);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].re.partial_cmp(&work[(j, j)].re).unwrap());
    let values = order.iter().map(|&i| work[(i, i)].re).collect();
    let vectors = vecs.select_columns(&order).with_field(field);
    Ok(SelfAdjointEigen { values, vectors })
}
