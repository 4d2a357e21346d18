use crate::error::{Error, Result};
use crate::numkernel::{complete_basis, svd, DenseMatrix};
use crate::pfaffian::skew_tridiagonalize;
use crate::scalar::Scalar;

use super::class::StructureClass;
use super::ensemble::validate;

/// Real block-diagonal form `V A = D V` of a skew-symmetric matrix, where
/// `D` holds the 2x2 blocks `[[0, a_j], [-a_j, 0]]` followed by a 1x1 zero
/// block when `n` is odd.
#[derive(Debug, Clone)]
pub struct SkewBlockForm<T: Scalar> {
    /// Real orthogonal.
    pub v: DenseMatrix<T>,
    /// Ascending, nonnegative.
    pub block_values: Vec<T>,
    pub zero_block: bool,
}

impl<T: Scalar> SkewBlockForm<T> {
    /// The block-diagonal matrix `D`.
    pub fn block_diagonal(&self) -> DenseMatrix<T> {
        let n = self.v.rows();
        let mut d = DenseMatrix::zeros(n, n, crate::Field::Real);
        for (j, &a) in self.block_values.iter().enumerate() {
            d[(2 * j, 2 * j + 1)].re = a;
            d[(2 * j + 1, 2 * j)].re = -a;
        }
        d
    }
}

/// Block-diagonalizes a real skew-symmetric matrix.
///
/// The matrix is reduced to skew tridiagonal form; an odd/even permutation
/// turns that into `[[0, B], [-B^T, 0]]` with `B` bidiagonal, and the SVD of
/// `B` supplies the 2x2 blocks.
pub fn skew_block_form<T: Scalar>(a: &DenseMatrix<T>) -> Result<SkewBlockForm<T>> {
    a.ensure_finite()?;
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::StructureViolation {
            what: "expected a nonempty square matrix".into(),
            violation: f64::INFINITY,
        });
    }
    let n = a.rows();
    let check = validate(a, &StructureClass::skew_symmetric(n))?;
    if !check.valid {
        return Err(Error::StructureViolation {
            what: "matrix is not real skew-symmetric".into(),
            violation: check.violation.as_f64(),
        });
    }
    let tri = skew_tridiagonalize(a);
    let p = n.div_ceil(2);
    let q = n / 2;
    let mut bmat = DenseMatrix::zeros(p, q, crate::Field::Real);
    for (i, &e) in tri.superdiag.iter().enumerate() {
        if i % 2 == 0 {
            bmat[(i / 2, i / 2)].re = e;
        } else {
            bmat[(i.div_ceil(2), i / 2)].re = -e;
        }
    }

    let (block_values, w) = if q == 0 {
        (Vec::new(), DenseMatrix::identity(1))
    } else {
        let s = svd(&bmat)?;
        let x = if p > q { complete_basis(&s.u) } else { s.u.clone() };
        let mut w = DenseMatrix::zeros(n, n, crate::Field::Real);
        let mut values = Vec::with_capacity(q);
        for (slot, j) in (0..q).rev().enumerate() {
            values.push(s.sigma[j]);
            for r in 0..p {
                w[(r, 2 * slot)] = x[(r, j)];
            }
            for r in 0..q {
                w[(p + r, 2 * slot + 1)] = s.v[(r, j)];
            }
        }
        if p > q {
            for r in 0..p {
                w[(r, n - 1)] = x[(r, q)];
            }
        }
        (values, w)
    };

    // undo the odd/even permutation: permuted position r < p is index 2r,
    // position p + r is index 2r + 1
    let unpermuted =
        DenseMatrix::from_fn(
            n,
            n,
            crate::Field::Real,
            |i, j| {
                if i % 2 == 0 {
                    w[(i / 2, j)]
                } else {
                    w[(p + i / 2, j)]
                }
            },
        );
    let vt = tri.q.matmul(&unpermuted);
    Ok(SkewBlockForm { v: vt.transpose(), block_values, zero_block: n % 2 == 1 })
}
