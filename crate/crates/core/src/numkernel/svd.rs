use super::eigh::{jacobi_rotation, rotate_columns};
use super::matrix::{cone, czero, DenseMatrix};
use super::qr::complete_basis;
use crate::error::Result;
use crate::scalar::Scalar;

/// Thin singular value decomposition `A = U diag(sigma) V^H`.
#[derive(Debug, Clone)]
pub struct Svd<T: Scalar> {
    /// `m x p` with orthonormal columns, `p = min(m, n)`.
    pub u: DenseMatrix<T>,
    /// Descending, nonnegative.
    pub sigma: Vec<T>,
    /// `n x p` with orthonormal columns.
    pub v: DenseMatrix<T>,
}

impl<T: Scalar> Svd<T> {
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        let s = DenseMatrix::diag_real(&self.sigma);
        self.u.matmul(&s).matmul(&self.v.adjoint())
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd<T: Scalar>(a: &DenseMatrix<T>) -> Result<Svd<T>> {
    a.ensure_finite()?;
    let (m, n) = a.shape();
    if m < n {
        let t = svd(&a.adjoint())?;
        return Ok(Svd { u: t.v, sigma: t.sigma, v: t.u });
    }
    let field = a.field();
    let mut w = a.clone();
    let mut v = DenseMatrix::from_fn(n, n, field, |i, j| if i == j { cone() } else { czero() });
    let eps = T::epsilon();

    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = czero::<T>();
                for i in 0..m {
                    let (x, y) = (w[(i, p)], w[(i, q)]);
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                if gamma.norm() <= eps * (alpha * beta).sqrt() || gamma.norm() == T::zero() {
                    continue;
                }
                rotated = true;
                let rot = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, &rot);
                rotate_columns(&mut v, p, q, &rot);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = (0..n).map(|j| (0..m).map(|i| w[(i, j)].norm_sqr()).sum::<T>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let sigma: Vec<T> = order.iter().map(|&j| norms[j]).collect();
    let v = v.select_columns(&order).with_field(field);

    let smax = sigma.first().copied().unwrap_or(T::zero());
    let cutoff = smax * eps * T::lit(n as f64);
    let rank = sigma.iter().take_while(|&&s| s > cutoff && s > T::zero()).count();
    let mut u = DenseMatrix::zeros(m, rank, field);
    for (k, &j) in order.iter().take(rank).enumerate() {
        let col: Vec<_> = (0..m).map(|i| w[(i, j)] / sigma[k]).collect();
        u.set_column(k, &col);
    }
    if rank < n {
        u = complete_basis(&u).columns(0, n);
    }
    Ok(Svd { u: u.with_field(field), sigma, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::matrix::{c, Field};
    use crate::rng::SampleStream;

    #[test]
    fn diagonal_with_negative_entry() {
        let s = svd(&DenseMatrix::<f64>::diag_real(&[2.0, -3.0])).unwrap();
        assert_eq!(s.sigma, vec![3.0, 2.0]);
    }

    #[test]
    fn zero_wide_matrix() {
        let s = svd(&DenseMatrix::<f64>::zeros(2, 3, Field::Real)).unwrap();
        assert_eq!(s.sigma, vec![0.0, 0.0]);
        assert!(s.u.orthonormality_error() < 1e-15);
        assert!(s.v.orthonormality_error() < 1e-15);
    }

    #[test]
    fn random_complex_residual() {
        let mut st = SampleStream::new(5, 1);
        let a = DenseMatrix::from_fn(5, 4, Field::Complex, |_, _| c(st.gaussian::<f64>(), st.gaussian()));
        let s = svd(&a).unwrap();
        let res = (&a - &s.reconstruct()).frobenius_norm();
        assert!(res <= 1e-12 * 5.0 * a.frobenius_norm());
        assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
        assert!(s.u.orthonormality_error() < 1e-12 && s.v.orthonormality_error() < 1e-12);
    }

    #[test]
    fn rank_deficient_completes_u() {
        let a = DenseMatrix::<f64>::from_rows(&[&[1.0, 1.0], &[1.0, 1.0], &[0.0, 0.0]]);
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 2.0).abs() < 1e-14 && s.sigma[1].abs() < 1e-14);
        assert!(s.u.orthonormality_error() < 1e-14);
        assert!((&a - &s.reconstruct()).max_abs() < 1e-14);
    }
}
