use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// Field over which a matrix is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// The smallest field containing both operands.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Real && other == Field::Real {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

/// Dense row-major matrix with complex storage.
///
/// A `Field::Real` matrix keeps every imaginary part at exactly zero; all
/// constructors and arithmetic in this module preserve that.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
    field: Field,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Self { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols], field }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n, Field::Real);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds a real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, data: entries.into_iter().map(|x| Complex::new(x, T::zero())).collect(), field: Field::Real }
    }

    /// Builds a complex matrix from row-major entries.
    pub fn from_complex(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, data: entries, field: Field::Complex }
    }

    /// Real matrix from nested rows; convenient for literals in tests.
    pub fn from_rows(rows: &[&[T]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend_from_slice(row);
        }
        Self::from_real(r, c, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data, field }.normalized()
    }

    pub fn from_fn_real(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_fn(rows, cols, Field::Real, |i, j| Complex::new(f(i, j), T::zero()))
    }

    pub fn diag_real(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn_real(n, n, |i, j| if i == j { values[i] } else { T::zero() })
    }

    pub fn diag_complex(values: &[Complex<T>]) -> Self {
        let n = values.len();
        let zero = Complex::new(T::zero(), T::zero());
        Self::from_fn(n, n, Field::Complex, |i, j| if i == j { values[i] } else { zero })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn is_real(&self) -> bool {
        self.field == Field::Real
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Real parts in row-major order.
    pub fn real_entries(&self) -> Vec<T> {
        self.data.iter().map(|z| z.re).collect()
    }

    /// Relabels the field; for `Real` all imaginary parts are dropped.
    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.field == Field::Real {
            for z in &mut self.data {
                z.im = T::zero();
            }
        }
        self
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(invalid("matrix has non-finite entries"))
        }
    }

    pub(crate) fn ensure_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(invalid(format!("expected a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.field, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.field, |i, j| self[(j, i)].conj())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect(), field: self.field }
            .normalized()
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        out.field = if s.im == T::zero() { self.field } else { Field::Complex };
        for z in &mut out.data {
            *z *= s;
        }
        out.normalized()
    }

    /// Multiplication by the imaginary unit.
    pub fn times_i(&self) -> Self {
        self.scale_complex(Complex::new(T::zero(), T::one()))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols, self.field.join(other.field));
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out.normalized()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Complex<T>]) {
        assert_eq!(v.len(), self.rows);
        for (i, &z) in v.iter().enumerate() {
            self[(i, j)] = if self.field == Field::Real { Complex::new(z.re, T::zero()) } else { z };
        }
    }

    /// Copy of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, self.field, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Columns `c0..c1`.
    pub fn columns(&self, c0: usize, c1: usize) -> Self {
        self.block(0, self.rows, c0, c1)
    }

    /// Columns in the given order.
    pub fn select_columns(&self, order: &[usize]) -> Self {
        Self::from_fn(self.rows, order.len(), self.field, |i, j| self[(i, order[j])])
    }

    /// `max |(A^H A - I)_{ij}|`, the departure of the columns from orthonormality.
    pub fn orthonormality_error(&self) -> T {
        let g = self.adjoint().matmul(self);
        let mut worst = T::zero();
        for i in 0..g.rows {
            for j in 0..g.cols {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((g[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// `max |A - A^H|` entrywise.
    pub fn hermitian_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Hermitian part `(A + A^H) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, self.field, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// Largest distance of an entry outside the band `|i - j| <= k` from zero.
    pub fn band_defect(&self, k: usize) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i.abs_diff(j) > k {
                    worst = worst.max(self[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Zeroes every entry outside the band `|i - j| <= k`.
    pub fn band_masked(&self, k: usize) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Self::from_fn(self.rows, self.cols, self.field, |i, j| if i.abs_diff(j) > k { zero } else { self[(i, j)] })
    }

    /// Largest imaginary part magnitude.
    pub fn imaginary_defect(&self) -> T {
        self.data.iter().map(|z| z.im.abs()).fold(T::zero(), T::max)
    }

    pub fn cast<U: Scalar>(&self) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()))).collect(),
            field: self.field,
        }
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn add(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
            field: self.field.join(rhs.field),
        }
        .normalized()
    }
}

impl<T: Scalar> Sub for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn sub(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
            field: self.field.join(rhs.field),
        }
        .normalized()
    }
}

impl<T: Scalar> Mul for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn mul(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Scalar> Neg for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn neg(self) -> DenseMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: Scalar> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} ({:?})", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if self.field == Field::Real {
                    write!(f, " {:>12.5e}", z.re)?;
                } else {
                    write!(f, " {:>11.4e}{:+.4e}i", z.re, z.im)?;
                }
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn c<T: Scalar>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Scalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_products_stay_real() {
        let a = DenseMatrix::<f64>::from_rows(&[&[1.0, -2.0], &[3.0, 0.5]]);
        let b = a.matmul(&a.transpose());
        assert_eq!(b.field(), Field::Real);
        assert_eq!(b.imaginary_defect(), 0.0);
        assert_eq!(b[(0, 1)].re, 1.0 * 3.0 + -2.0 * 0.5);
    }

    #[test]
    fn adjoint_conjugates() {
        let a = DenseMatrix::from_complex(1, 2, vec![c(1.0, 2.0), c(0.0, -1.0)]);
        let h = a.adjoint();
        assert_eq!(h.shape(), (2, 1));
        assert_eq!(h[(0, 0)], c(1.0, -2.0));
        assert_eq!(h[(1, 0)], c(0.0, 1.0));
    }

    #[test]
    fn band_mask_and_defect() {
        let a = DenseMatrix::<f64>::from_fn_real(4, 4, |i, j| (i + j + 1) as f64);
        let t = a.band_masked(1);
        assert_eq!(t.band_defect(1), 0.0);
        assert_eq!(a.band_defect(1), 5.0);
    }
}
