use crate::error::{invalid, Result};
use crate::numkernel::{c, determinant, qr_decompose, DenseMatrix, Field};
use crate::rng::SampleStream;
use crate::scalar::Scalar;

use super::class::{DetSign, StructureClass, StructureKind};

/// Outcome of a membership test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validation<T> {
    pub valid: bool,
    /// Largest violation of any defining relation, in absolute terms.
    pub violation: T,
}

/// Checks the defining relations of `class` on `a`.
///
/// Linear structures are tested relative to `max(1, max |a_ij|)`; group
/// structures in absolute terms. The tolerance is `1e-10`.
pub fn validate<T: Scalar>(a: &DenseMatrix<T>, class: &StructureClass) -> Result<Validation<T>> {
    if a.shape() != class.shape() {
        return Err(invalid(format!(
            "matrix is {}x{} but {class} needs {}x{}",
            a.rows(),
            a.cols(),
            class.m(),
            class.n()
        )));
    }
    a.ensure_finite()?;
    let n = a.rows();
    let mut violation = if class.field() == Field::Real { a.imaginary_defect() } else { T::zero() };
    let pairwise = |f: &dyn Fn(usize, usize) -> T| {
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                worst = worst.max(f(i, j));
            }
        }
        worst
    };
    let kind = class.kind();
    match kind {
        StructureKind::Symmetric => violation = violation.max(pairwise(&|i, j| (a[(i, j)] - a[(j, i)]).norm())),
        StructureKind::Hermitian => violation = violation.max(a.hermitian_defect()),
        StructureKind::SkewSymmetric => violation = violation.max(pairwise(&|i, j| (a[(i, j)] + a[(j, i)]).norm())),
        StructureKind::SkewHermitian => {
            violation = violation.max(pairwise(&|i, j| (a[(i, j)] + a[(j, i)].conj()).norm()))
        }
        StructureKind::Orthogonal | StructureKind::Unitary => {
            violation = violation.max(a.orthonormality_error());
            if let Some(det) = class.det_sign() {
                let d = determinant(a)?;
                violation = violation.max((d - c(T::lit(det.as_f64()), T::zero())).norm());
            }
        }
        StructureKind::RectReal | StructureKind::RectComplex => {}
    }
    if let Some(k) = class.bandwidth() {
        violation = violation.max(a.band_defect(k));
    }
    let scale = if kind.is_group() { T::one() } else { a.max_abs().max(T::one()) };
    Ok(Validation { valid: violation <= T::tol(1e-10) * scale, violation })
}

fn gaussian_matrix<T: Scalar>(rows: usize, cols: usize, field: Field, stream: &mut SampleStream) -> DenseMatrix<T> {
    match field {
        Field::Real => DenseMatrix::from_fn_real(rows, cols, |_, _| stream.gaussian()),
        Field::Complex => DenseMatrix::from_fn(rows, cols, Field::Complex, |_, _| {
            let re = stream.gaussian();
            let im = stream.gaussian();
            c(re, im)
        }),
    }
}

/// Haar-distributed orthogonal (real field) or unitary (complex field) matrix.
pub(crate) fn haar<T: Scalar>(n: usize, field: Field, stream: &mut SampleStream) -> DenseMatrix<T> {
    let g = gaussian_matrix(n, n, field, stream);
    let (q, _) = qr_decompose(&g).expect("Gaussian matrix is finite");
    q
}

/// Draws one matrix from the ensemble attached to `class`.
///
/// Linear structures: Gaussian entries symmetrized or skew-symmetrized, then
/// band-masked. Group structures: Haar measure, with the determinant of an
/// orthogonal sample fixed by negating its first column. Rectangular kinds:
/// entrywise standard Gaussian (complex entries have independent parts).
pub fn sample<T: Scalar>(class: &StructureClass, stream: &mut SampleStream) -> DenseMatrix<T> {
    let (m, n) = class.shape();
    let field = class.field();
    let half = T::lit(0.5);
    let out = match class.kind() {
        StructureKind::Symmetric | StructureKind::Hermitian => {
            let g = gaussian_matrix::<T>(n, n, field, stream);
            DenseMatrix::from_fn(n, n, field, |i, j| (g[(i, j)] + g[(j, i)].conj()) * half)
        }
        StructureKind::SkewSymmetric | StructureKind::SkewHermitian => {
            let g = gaussian_matrix::<T>(n, n, field, stream);
            DenseMatrix::from_fn(n, n, field, |i, j| (g[(i, j)] - g[(j, i)].conj()) * half)
        }
        StructureKind::Orthogonal => {
            let mut q = haar::<T>(n, Field::Real, stream);
            let d = determinant(&q).expect("square").re;
            let want = class.det_sign().unwrap_or(DetSign::Plus);
            if (d < T::zero()) != (want == DetSign::Minus) {
                for i in 0..n {
                    q[(i, 0)] = -q[(i, 0)];
                }
            }
            q
        }
        StructureKind::Unitary => haar::<T>(n, Field::Complex, stream),
        StructureKind::RectReal | StructureKind::RectComplex => gaussian_matrix(m, n, field, stream),
    };
    match class.bandwidth() {
        Some(k) => out.band_masked(k),
        None => out,
    }
}
