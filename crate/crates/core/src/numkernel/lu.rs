use num_complex::Complex;

use super::matrix::{cone, czero, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu<T: Scalar> {
    factors: DenseMatrix<T>,
    perm: Vec<usize>,
    swaps_odd: bool,
}

impl<T: Scalar> Lu<T> {
    pub fn new(a: &DenseMatrix<T>) -> Result<Self> {
        a.ensure_finite()?;
        a.ensure_square()?;
        let n = a.rows();
        let mut f = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps_odd = false;
        for k in 0..n {
            let (p, _) = (k..n).map(|i| (i, f[(i, k)].norm())).fold((k, T::neg_infinity()), |best, cand| {
                if cand.1 > best.1 {
                    cand
                } else {
                    best
                }
            });
            if p != k {
                for j in 0..n {
                    let t = f[(k, j)];
                    f[(k, j)] = f[(p, j)];
                    f[(p, j)] = t;
                }
                perm.swap(k, p);
                swaps_odd = !swaps_odd;
            }
            let pivot = f[(k, k)];
            if pivot.norm() == T::zero() {
                continue;
            }
            for i in k + 1..n {
                let l = f[(i, k)] / pivot;
                f[(i, k)] = l;
                if l.norm() == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let z = f[(i, j)] - l * f[(k, j)];
                    f[(i, j)] = z;
                }
            }
        }
        Ok(Self { factors: f.with_field(a.field()), perm, swaps_odd })
    }

    pub fn determinant(&self) -> Complex<T> {
        let n = self.factors.rows();
        let mut d: Complex<T> = if self.swaps_odd { -cone::<T>() } else { cone() };
        for i in 0..n {
            d *= self.factors[(i, i)];
        }
        d
    }

    fn ensure_nonsingular(&self) -> Result<()> {
        let n = self.factors.rows();
        let scale = self.factors.max_abs();
        let min_pivot = (0..n).map(|i| self.factors[(i, i)].norm()).fold(T::infinity(), T::min);
        if n > 0 && (min_pivot == T::zero() || min_pivot <= T::epsilon() * scale * T::lit(1e-4)) {
            return Err(Error::SingularInput { sigma_min: min_pivot.as_f64() });
        }
        Ok(())
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        self.ensure_nonsingular()?;
        let n = self.factors.rows();
        assert_eq!(b.rows(), n, "right-hand side has the wrong number of rows");
        let f = &self.factors;
        let mut x = DenseMatrix::from_fn(n, b.cols(), f.field().join(b.field()), |i, j| b[(self.perm[i], j)]);
        for col in 0..b.cols() {
            for i in 0..n {
                let mut s = x[(i, col)];
                for k in 0..i {
                    s -= f[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, col)];
                for k in i + 1..n {
                    s -= f[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s / f[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<DenseMatrix<T>> {
        let n = self.factors.rows();
        let eye = DenseMatrix::from_fn(n, n, self.factors.field(), |i, j| if i == j { cone() } else { czero() });
        self.solve(&eye)
    }
}

pub fn determinant<T: Scalar>(a: &DenseMatrix<T>) -> Result<Complex<T>> {
    Ok(Lu::new(a)?.determinant())
}
