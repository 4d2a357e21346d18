use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{eig_selfadjoint, eig_unitary_angles, svd, DenseMatrix};
use crate::scalar::Scalar;

use super::class::{DetSign, StructureClass, StructureKind};
use super::ensemble::validate;

/// Structure-reduced spectral data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CanonicalSpectrum<T> {
    /// Ascending real eigenvalues (for skew-Hermitian input, the imaginary
    /// parts of the eigenvalues).
    RealEigs(Vec<T>),
    /// Ascending nonnegative `a_i` of the eigenvalue pairs `±i a_i` of a real
    /// skew-symmetric matrix; odd sizes carry one more eigenvalue fixed at 0.
    SkewPairs { values: Vec<T>, has_forced_zero: bool },
    /// Eigen-angles. For orthogonal matrices `free` holds one angle in
    /// `[0, pi]` per conjugate pair and the counts hold the eigenvalues at
    /// `±1` forced by parity and determinant. For unitary matrices `free`
    /// holds all `n` angles in `(-pi, pi]`, ascending, and both counts are 0.
    Angles { free: Vec<T>, fixed_plus_one: usize, fixed_minus_one: usize },
    /// Descending singular values.
    SingularValues(Vec<T>),
}

impl<T: Scalar> CanonicalSpectrum<T> {
    /// The values a path tracker follows.
    pub fn values(&self) -> &[T] {
        match self {
            CanonicalSpectrum::RealEigs(v) => v,
            CanonicalSpectrum::SkewPairs { values, .. } => values,
            CanonicalSpectrum::Angles { free, .. } => free,
            CanonicalSpectrum::SingularValues(v) => v,
        }
    }
}

/// Eigenvalues at `±1` that parity and determinant force on a real
/// orthogonal matrix of size `n`.
pub fn forced_unit_eigenvalues(n: usize, det: DetSign) -> (usize, usize) {
    match (n % 2, det) {
        (0, DetSign::Plus) => (0, 0),
        (0, DetSign::Minus) => (1, 1),
        (_, DetSign::Plus) => (1, 0),
        (_, DetSign::Minus) => (0, 1),
    }
}

/// Canonical spectrum of a member of `class`.
pub fn canonical_spectrum<T: Scalar>(a: &DenseMatrix<T>, class: &StructureClass) -> Result<CanonicalSpectrum<T>> {
    let check = validate(a, class)?;
    if !check.valid {
        return Err(Error::StructureViolation {
            what: format!("matrix is not a member of {class}"),
            violation: check.violation.as_f64(),
        });
    }
    let n = class.n();
    Ok(match class.kind() {
        StructureKind::Symmetric | StructureKind::Hermitian => {
            CanonicalSpectrum::RealEigs(eig_selfadjoint(&a.hermitian_part())?.values)
        }
        StructureKind::SkewHermitian => {
            // -iA is Hermitian and carries the imaginary parts as eigenvalues
            let h = a.times_i().scale(-T::one()).hermitian_part();
            CanonicalSpectrum::RealEigs(eig_selfadjoint(&h)?.values)
        }
        StructureKind::SkewSymmetric => {
            let h = a.times_i().scale(-T::one()).hermitian_part();
            let lam = eig_selfadjoint(&h)?.values;
            let m = n / 2;
            let half = T::lit(0.5);
            let values = (0..m).map(|j| ((lam[n - m + j] - lam[m - 1 - j]) * half).max(T::zero())).collect();
            CanonicalSpectrum::SkewPairs { values, has_forced_zero: n % 2 == 1 }
        }
        StructureKind::Unitary => {
            CanonicalSpectrum::Angles { free: eig_unitary_angles(a)?, fixed_plus_one: 0, fixed_minus_one: 0 }
        }
        StructureKind::Orthogonal => {
            let det = class.det_sign().unwrap_or(DetSign::Plus);
            orthogonal_angles(eig_unitary_angles(a)?, n, det, check.violation)?
        }
        StructureKind::RectReal | StructureKind::RectComplex => CanonicalSpectrum::SingularValues(svd(a)?.sigma),
    })
}

/// Folds eigen-angles of a real orthogonal matrix into conjugate-pair form.
///
/// The eigenvalues at `±1` forced by parity and determinant are removed first
/// (nearest angle to 0, resp. to pi). Remaining angles are folded into
/// `[0, pi]` and paired; additional near-boundary angles stay free.
fn orthogonal_angles<T: Scalar>(angles: Vec<T>, n: usize, det: DetSign, defect: T) -> Result<CanonicalSpectrum<T>> {
    let (plus, minus) = forced_unit_eigenvalues(n, det);
    let mut folded: Vec<T> = angles.into_iter().map(|t| t.abs()).collect();
    folded.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tol = T::tol(1e-10) + T::lit(10.0) * defect;
    if plus == 1 {
        let t = folded.remove(0);
        if t > tol {
            return Err(Error::InternalInconsistency(format!("forced eigenvalue 1 not found (nearest angle {t:e})")));
        }
    }
    if minus == 1 {
        let t = folded.pop().expect("nonempty");
        if T::PI() - t > tol {
            return Err(Error::InternalInconsistency(format!("forced eigenvalue -1 not found (nearest angle {t:e})")));
        }
    }
    let half = T::lit(0.5);
    let free = folded.chunks(2).map(|p| (p[0] + p[1]) * half).collect();
    Ok(CanonicalSpectrum::Angles { free, fixed_plus_one: plus, fixed_minus_one: minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::c;
    use crate::structures::skew_block_form;

    #[test]
    fn two_by_two_skew_pair() {
        let a = DenseMatrix::<f64>::from_rows(&[&[0.0, 2.0], &[-2.0, 0.0]]);
        let s = canonical_spectrum(&a, &StructureClass::skew_symmetric(2)).unwrap();
        match s {
            CanonicalSpectrum::SkewPairs { values, has_forced_zero } => {
                assert!((values[0] - 2.0).abs() < 1e-14);
                assert!(!has_forced_zero);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rotation_about_axis() {
        let t = 1.1f64;
        let r = DenseMatrix::<f64>::from_rows(&[&[1.0, 0.0, 0.0], &[0.0, t.cos(), -t.sin()], &[0.0, t.sin(), t.cos()]]);
        let s = canonical_spectrum(&r, &StructureClass::orthogonal(3, DetSign::Plus)).unwrap();
        match s {
            CanonicalSpectrum::Angles { free, fixed_plus_one, fixed_minus_one } => {
                assert_eq!((fixed_plus_one, fixed_minus_one), (1, 0));
                assert_eq!(free.len(), 1);
                assert!((free[0] - t).abs() < 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reflection_has_both_fixed_points() {
        let r = DenseMatrix::<f64>::diag_real(&[1.0, -1.0]);
        let s = canonical_spectrum(&r, &StructureClass::orthogonal(2, DetSign::Minus)).unwrap();
        assert_eq!(s, CanonicalSpectrum::Angles { free: vec![], fixed_plus_one: 1, fixed_minus_one: 1 });
    }

    #[test]
    fn skew_hermitian_reads_imaginary_parts() {
        let a = DenseMatrix::<f64>::diag_complex(&[c(0.0, 2.0), c(0.0, -1.0)]);
        let s = canonical_spectrum(&a, &StructureClass::skew_hermitian(2)).unwrap();
        let v = s.values();
        assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn violation_is_reported() {
        let a = DenseMatrix::<f64>::from_rows(&[&[0.0, 1.0], &[2.0, 0.0]]);
        assert!(matches!(canonical_spectrum(&a, &StructureClass::symmetric(2)), Err(Error::StructureViolation { .. })));
    }

    #[test]
    fn both_skew_routes_agree() {
        let class = StructureClass::skew_symmetric(7);
        for i in 0..20 {
            let a = crate::structures::sample::<f64>(&class, &mut crate::SampleStream::new(4, i));
            let s = canonical_spectrum(&a, &class).unwrap();
            let b = skew_block_form(&a).unwrap();
            for (x, y) in s.values().iter().zip(&b.block_values) {
                assert!((x - y).abs() <= 1e-10, "{x} vs {y}");
            }
        }
    }
}
