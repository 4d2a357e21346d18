use num_complex::Complex;

use super::matrix::{cone, czero, DenseMatrix};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// Householder reflector `I - 2 v v^H / (v^H v)` stored by its vector.
pub(crate) struct Reflector<T> {
    pub(crate) v: Vec<Complex<T>>,
    pub(crate) offset: usize,
    vnorm2: T,
}

impl<T: Scalar> Reflector<T> {
    /// Reflector mapping `x` onto a multiple of the first unit vector, or
    /// `None` when `x` already has that form.
    pub(crate) fn annihilating(x: &[Complex<T>], offset: usize) -> Option<Self> {
        let tail: T = x.iter().skip(1).map(|z| z.norm_sqr()).sum();
        if tail == T::zero() {
            return None;
        }
        let alpha = (x[0].norm_sqr() + tail).sqrt();
        let r0 = x[0].norm();
        let phase = if r0 == T::zero() { cone() } else { x[0] / r0 };
        let mut v = x.to_vec();
        v[0] += phase * alpha;
        let vnorm2 = v.iter().map(|z| z.norm_sqr()).sum();
        Some(Self { v, offset, vnorm2 })
    }

    /// `M <- H M`, acting on rows `offset..`.
    pub(crate) fn apply_left(&self, m: &mut DenseMatrix<T>) {
        let two = T::lit(2.0);
        for j in 0..m.cols() {
            let mut dot = czero();
            for (i, vi) in self.v.iter().enumerate() {
                dot += vi.conj() * m[(self.offset + i, j)];
            }
            let f = dot * (two / self.vnorm2);
            for (i, vi) in self.v.iter().enumerate() {
                let z = m[(self.offset + i, j)] - vi * f;
                m[(self.offset + i, j)] = z;
            }
        }
    }

    /// `M <- M H`, acting on columns `offset..`.
    pub(crate) fn apply_right(&self, m: &mut DenseMatrix<T>) {
        let two = T::lit(2.0);
        for i in 0..m.rows() {
            let mut dot = czero();
            for (j, vj) in self.v.iter().enumerate() {
                dot += m[(i, self.offset + j)] * vj;
            }
            let f = dot * (two / self.vnorm2);
            for (j, vj) in self.v.iter().enumerate() {
                let z = m[(i, self.offset + j)] - f * vj.conj();
                m[(i, self.offset + j)] = z;
            }
        }
    }
}

/// Thin QR factorization `A = Q R` of a matrix with at least as many rows as
/// columns. `R` has a real nonnegative diagonal, so the factorization of a
/// Gaussian matrix yields a Haar-distributed `Q`.
pub fn qr_decompose<T: Scalar>(a: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
    a.ensure_finite()?;
    let (m, n) = a.shape();
    if m < n {
        return Err(invalid(format!("qr_decompose needs rows >= cols, got {m}x{n}")));
    }
    let field = a.field();
    let mut work = a.clone();
    let mut reflectors = Vec::with_capacity(n);
    for k in 0..n {
        let x: Vec<_> = (k..m).map(|i| work[(i, k)]).collect();
        if let Some(h) = Reflector::annihilating(&x, k) {
            h.apply_left(&mut work);
            for i in k + 1..m {
                work[(i, k)] = czero();
            }
            reflectors.push(h);
        }
    }

    let mut q = DenseMatrix::from_fn(m, n, field, |i, j| if i == j { cone() } else { czero() });
    for h in reflectors.iter().rev() {
        h.apply_left(&mut q);
    }
    let mut r = DenseMatrix::from_fn(n, n, field, |i, j| if j >= i { work[(i, j)] } else { czero() });

    for k in 0..n {
        let d = r[(k, k)];
        let mag = d.norm();
        if mag == T::zero() {
            continue;
        }
        let s = d / mag;
        for j in k..n {
            r[(k, j)] *= s.conj();
        }
        r[(k, k)] = Complex::new(mag, T::zero());
        for i in 0..m {
            q[(i, k)] *= s;
        }
    }
    Ok((q.with_field(field), r.with_field(field)))
}

/// Extends orthonormal columns to a full orthonormal basis of the ambient space.
pub(crate) fn complete_basis<T: Scalar>(u: &DenseMatrix<T>) -> DenseMatrix<T> {
    let (m, p) = u.shape();
    let mut basis: Vec<Vec<Complex<T>>> = (0..p).map(|j| u.column(j)).collect();
    while basis.len() < m {
        let mut best: Option<(T, Vec<Complex<T>>)> = None;
        for e in 0..m {
            let mut v = vec![czero::<T>(); m];
            v[e] = cone();
            for _ in 0..2 {
                for b in &basis {
                    let dot = b.iter().zip(&v).fold(czero::<T>(), |acc, (bi, vi)| acc + bi.conj() * vi);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= bi * dot;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, v));
            }
        }
        let (norm, v) = best.expect("ambient dimension exceeds basis size");
        basis.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut out = DenseMatrix::zeros(m, m, u.field());
    for (j, col) in basis.iter().enumerate() {
        out.set_column(j, col);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::matrix::c;
    use crate::rng::SampleStream;

    #[test]
    fn identity_factors_trivially() {
        let (q, r) = qr_decompose(&DenseMatrix::<f64>::identity(3)).unwrap();
        assert_eq!(q, DenseMatrix::identity(3));
        assert_eq!(r, DenseMatrix::identity(3));
    }

    #[test]
    fn column_vector_normalizes() {
        let a = DenseMatrix::<f64>::from_real(2, 1, vec![3.0, 4.0]);
        let (q, r) = qr_decompose(&a).unwrap();
        assert!((q[(0, 0)].re - 0.6).abs() < 1e-15);
        assert!((q[(1, 0)].re - 0.8).abs() < 1e-15);
        assert!((r[(0, 0)].re - 5.0).abs() < 1e-15);
    }

    #[test]
    fn random_complex_residual_and_orthonormality() {
        let mut s = SampleStream::new(3, 0);
        let a = DenseMatrix::from_fn(5, 3, crate::Field::Complex, |_, _| c(s.gaussian::<f64>(), s.gaussian()));
        let (q, r) = qr_decompose(&a).unwrap();
        let res = (&a - &q.matmul(&r)).frobenius_norm();
        assert!(res <= 1e-13 * a.frobenius_norm(), "residual {res}");
        assert!(q.orthonormality_error() <= 1e-13);
        for k in 0..3 {
            assert!(r[(k, k)].im == 0.0 && r[(k, k)].re >= 0.0);
            for i in k + 1..3 {
                assert_eq!(r[(i, k)], czero());
            }
        }
    }

    #[test]
    fn wide_input_is_rejected() {
        let a = DenseMatrix::<f64>::zeros(2, 3, crate::Field::Real);
        assert!(matches!(qr_decompose(&a), Err(crate::Error::InvalidInput(_))));
    }

    #[test]
    fn nan_is_rejected() {
        let a = DenseMatrix::<f64>::from_real(1, 1, vec![f64::NAN]);
        assert!(qr_decompose(&a).is_err());
    }

    #[test]
    fn completion_is_orthonormal() {
        let v = DenseMatrix::<f64>::from_real(3, 1, vec![0.6, 0.8, 0.0]);
        let full = complete_basis(&v);
        assert!(full.orthonormality_error() < 1e-14);
        assert_eq!(full.column(0), v.column(0));
    }
}
