//! One-parameter curves on the structure manifolds.
//!
//! Linear structures use pencils `A0 + t A1`. The groups use the polar path
//! (unitary factor of `Q0 (I + t S)`), the Cayley path
//! `(I - iH(t)) (I + iH(t))^-1` and the exponential path `exp(i H(t))`, with
//! `H(t) = H0 + t H1`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::numkernel::{determinant, eig_selfadjoint, polar_unitary_factor, DenseMatrix, Field, Lu};
use crate::rng::SampleStream;
use crate::scalar::Scalar;
use crate::structures::{sample, validate, DetSign, StructureClass, StructureKind};

#[derive(Debug, Clone)]
pub enum CurveKind<T: Scalar> {
    LinearPencil {
        a0: DenseMatrix<T>,
        a1: DenseMatrix<T>,
    },
    PolarPath {
        q0: DenseMatrix<T>,
        s: DenseMatrix<T>,
    },
    CayleyPath {
        h0: DenseMatrix<T>,
        h1: DenseMatrix<T>,
    },
    /// Collisions along this path are often artifacts of the exponential map:
    /// eigenvalues of `H(t)` that differ by a multiple of `2 pi` collide.
    ExpPath {
        h0: DenseMatrix<T>,
        h1: DenseMatrix<T>,
    },
}

impl<T: Scalar> CurveKind<T> {
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::LinearPencil { .. } => "pencil",
            CurveKind::PolarPath { .. } => "polar",
            CurveKind::CayleyPath { .. } => "cayley",
            CurveKind::ExpPath { .. } => "exp",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MatrixCurve<T: Scalar> {
    class: StructureClass,
    kind: CurveKind<T>,
    t_min: T,
    t_max: T,
}

fn require_member<T: Scalar>(a: &DenseMatrix<T>, class: &StructureClass, what: &str) -> Result<()> {
    let check = validate(a, class)?;
    if check.valid {
        Ok(())
    } else {
        Err(Error::StructureViolation {
            what: format!("{what} is not a member of {class}"),
            violation: check.violation.as_f64(),
        })
    }
}

fn check_domain<T: Scalar>(t_min: T, t_max: T) -> Result<()> {
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
        return Err(invalid(format!("invalid parameter range [{t_min}, {t_max}]")));
    }
    Ok(())
}

fn hermitian_pair<T: Scalar>(class: &StructureClass, h0: &DenseMatrix<T>, h1: &DenseMatrix<T>) -> Result<()> {
    if class.kind() != StructureKind::Unitary {
        return Err(invalid("Cayley and exponential paths need the unitary class"));
    }
    let herm = StructureClass::hermitian(class.n());
    require_member(h0, &herm, "H0")?;
    require_member(h1, &herm, "H1")
}

impl<T: Scalar> MatrixCurve<T> {
    /// `A0 + t A1` on a linear structure (including rectangular kinds).
    pub fn linear_pencil(
        class: StructureClass,
        a0: DenseMatrix<T>,
        a1: DenseMatrix<T>,
        t_min: T,
        t_max: T,
    ) -> Result<Self> {
        check_domain(t_min, t_max)?;
        if class.kind().is_group() {
            return Err(invalid(format!("pencils are not closed in {class}")));
        }
        require_member(&a0, &class, "A0")?;
        require_member(&a1, &class, "A1")?;
        Ok(Self { class, kind: CurveKind::LinearPencil { a0, a1 }, t_min, t_max })
    }

    /// Unitary factor of `Q0 (I + t S)`; `S` is real skew-symmetric for the
    /// orthogonal class and skew-Hermitian for the unitary class.
    pub fn polar_path(
        class: StructureClass,
        q0: DenseMatrix<T>,
        s: DenseMatrix<T>,
        t_min: T,
        t_max: T,
    ) -> Result<Self> {
        check_domain(t_min, t_max)?;
        let skew = match class.kind() {
            StructureKind::Orthogonal => StructureClass::skew_symmetric(class.n()),
            StructureKind::Unitary => StructureClass::skew_hermitian(class.n()),
            _ => return Err(invalid("polar paths need the orthogonal or unitary class")),
        };
        require_member(&q0, &class, "Q0")?;
        require_member(&s, &skew, "S")?;
        if s.max_abs() == T::zero() {
            return Err(invalid("S must be nonzero"));
        }
        Ok(Self { class, kind: CurveKind::PolarPath { q0, s }, t_min, t_max })
    }

    pub fn cayley_path(
        class: StructureClass,
        h0: DenseMatrix<T>,
        h1: DenseMatrix<T>,
        t_min: T,
        t_max: T,
    ) -> Result<Self> {
        check_domain(t_min, t_max)?;
        hermitian_pair(&class, &h0, &h1)?;
        Ok(Self { class, kind: CurveKind::CayleyPath { h0, h1 }, t_min, t_max })
    }

    pub fn exp_path(class: StructureClass, h0: DenseMatrix<T>, h1: DenseMatrix<T>, t_min: T, t_max: T) -> Result<Self> {
        check_domain(t_min, t_max)?;
        hermitian_pair(&class, &h0, &h1)?;
        Ok(Self { class, kind: CurveKind::ExpPath { h0, h1 }, t_min, t_max })
    }

    /// Pencil with both endpoints drawn from the class ensemble, from streams
    /// 0 and 1 of `seed`.
    pub fn random_pencil(class: StructureClass, t_min: T, t_max: T, seed: u64) -> Result<Self> {
        let a0 = sample(&class, &mut SampleStream::new(seed, 0));
        let a1 = sample(&class, &mut SampleStream::new(seed, 1));
        Self::linear_pencil(class, a0, a1, t_min, t_max)
    }

    /// Polar path from a Haar start point (on the class's determinant
    /// component) with a Gaussian skew direction.
    pub fn random_polar(class: StructureClass, t_min: T, t_max: T, seed: u64) -> Result<Self> {
        let skew = match class.kind() {
            StructureKind::Orthogonal => StructureClass::skew_symmetric(class.n()),
            StructureKind::Unitary => StructureClass::skew_hermitian(class.n()),
            _ => return Err(invalid("polar paths need the orthogonal or unitary class")),
        };
        let q0 = sample(&class, &mut SampleStream::new(seed, 0));
        let s = sample(&skew, &mut SampleStream::new(seed, 1));
        Self::polar_path(class, q0, s, t_min, t_max)
    }

    pub fn random_cayley(class: StructureClass, t_min: T, t_max: T, seed: u64) -> Result<Self> {
        let (h0, h1) = random_hermitian_pair(&class, seed, T::one());
        Self::cayley_path(class, h0, h1, t_min, t_max)
    }

    /// Exponential path; `speed` scales `H1`.
    pub fn random_exp(class: StructureClass, t_min: T, t_max: T, seed: u64, speed: T) -> Result<Self> {
        let (h0, h1) = random_hermitian_pair(&class, seed, speed);
        Self::exp_path(class, h0, h1, t_min, t_max)
    }

    pub fn class(&self) -> &StructureClass {
        &self.class
    }

    pub fn kind(&self) -> &CurveKind<T> {
        &self.kind
    }

    pub fn domain(&self) -> (T, T) {
        (self.t_min, self.t_max)
    }

    pub fn evaluate(&self, t: T) -> Result<DenseMatrix<T>> {
        if !(t >= self.t_min && t <= self.t_max) {
            return Err(invalid(format!("t = {t} outside [{}, {}]", self.t_min, self.t_max)));
        }
        match &self.kind {
            CurveKind::LinearPencil { a0, a1 } => Ok(a0 + &a1.scale(t)),
            CurveKind::PolarPath { q0, s } => {
                let n = q0.rows();
                let m = q0.matmul(&(&DenseMatrix::identity(n) + &s.scale(t)));
                polar_unitary_factor(&m).map_err(|e| match e {
                    Error::SingularInput { sigma_min } => {
                        Error::Internal(format!("I + tS singular at t = {t} (sigma_min {sigma_min:e})"))
                    }
                    other => other,
                })
            }
            CurveKind::CayleyPath { h0, h1 } => {
                let n = h0.rows();
                let ih = (h0 + &h1.scale(t)).times_i();
                let id = DenseMatrix::identity(n);
                let minus = &id - &ih;
                let plus_inv = Lu::new(&(&id + &ih))?.inverse()?;
                Ok(minus.matmul(&plus_inv).with_field(Field::Complex))
            }
            CurveKind::ExpPath { h0, h1 } => {
                let eig = eig_selfadjoint(&(h0 + &h1.scale(t)))?;
                let phases: Vec<Complex<T>> = eig.values.iter().map(|&l| Complex::from_polar(T::one(), l)).collect();
                let v = &eig.vectors;
                Ok(v.matmul(&DenseMatrix::diag_complex(&phases)).matmul(&v.adjoint()))
            }
        }
    }

    /// Evaluates every node, in parallel; results are in grid order.
    pub fn evaluate_grid(&self, ts: &[T]) -> Result<Vec<DenseMatrix<T>>> {
        ts.par_iter().map(|&t| self.evaluate(t)).collect()
    }
}

fn random_hermitian_pair<T: Scalar>(class: &StructureClass, seed: u64, speed: T) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let herm = StructureClass::hermitian(class.n());
    let h0 = sample(&herm, &mut SampleStream::new(seed, 0));
    let h1: DenseMatrix<T> = sample(&herm, &mut SampleStream::new(seed, 1));
    (h0, h1.scale(speed))
}

/// `count` equally spaced nodes covering `[t_min, t_max]`.
pub fn uniform_grid<T: Scalar>(t_min: T, t_max: T, count: usize) -> Vec<T> {
    match count {
        0 => vec![],
        1 => vec![t_min],
        _ => {
            let last = T::from_usize(count - 1).expect("grid size fits");
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        t_max
                    } else {
                        t_min + (t_max - t_min) * T::from_usize(i).expect("grid size fits") / last
                    }
                })
                .collect()
        }
    }
}

/// Determinants along a group curve.
#[derive(Debug, Clone, PartialEq)]
pub enum PathDeterminants<T> {
    /// Sign of the determinant at each node (orthogonal curves).
    Signs(Vec<DetSign>),
    /// Unit-modulus determinant at each node (unitary curves).
    UnitDets(Vec<Complex<T>>),
}

pub fn det_along_path<T: Scalar>(curve: &MatrixCurve<T>, ts: &[T]) -> Result<PathDeterminants<T>> {
    let kind = curve.class().kind();
    if !kind.is_group() {
        return Err(invalid(format!("determinant tracking needs a group class, got {}", curve.class())));
    }
    let dets = curve.evaluate_grid(ts)?.iter().map(determinant).collect::<Result<Vec<_>>>()?;
    Ok(match kind {
        StructureKind::Orthogonal => PathDeterminants::Signs(
            dets.iter().map(|d| if d.re < T::zero() { DetSign::Minus } else { DetSign::Plus }).collect(),
        ),
        _ => PathDeterminants::UnitDets(dets),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{eig_general, eig_unitary_angles};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn pencil_at_zero_is_start() {
        let class = StructureClass::symmetric(4);
        let curve = MatrixCurve::<f64>::random_pencil(class, -1.0, 1.0, 3).unwrap();
        let CurveKind::LinearPencil { a0, .. } = curve.kind() else { unreachable!() };
        assert_eq!(curve.evaluate(0.0).unwrap().entries(), a0.entries());
    }

    #[test]
    fn polar_scaled_rotation() {
        let s = DenseMatrix::<f64>::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let curve = MatrixCurve::polar_path(
            StructureClass::orthogonal(2, DetSign::Plus),
            DenseMatrix::identity(2),
            s,
            -2.0,
            2.0,
        )
        .unwrap();
        let u = curve.evaluate(1.0).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let want = DenseMatrix::<f64>::from_rows(&[&[r, r], &[-r, r]]);
        assert!((&u - &want).max_abs() < 1e-15);
    }

    #[test]
    fn scalar_cayley() {
        let h0 = DenseMatrix::<f64>::zeros(1, 1, Field::Complex);
        let h1 = DenseMatrix::<f64>::diag_real(&[1.0]).with_field(Field::Complex);
        let curve = MatrixCurve::cayley_path(StructureClass::unitary(1), h0, h1, 0.0, 2.0).unwrap();
        let u = curve.evaluate(1.0).unwrap();
        assert!((u[(0, 0)] - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn outside_domain_rejected() {
        let curve = MatrixCurve::<f64>::random_pencil(StructureClass::symmetric(3), 0.0, 1.0, 1).unwrap();
        assert!(matches!(curve.evaluate(1.5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn constructors_check_structure() {
        let a = DenseMatrix::<f64>::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let err = MatrixCurve::linear_pencil(StructureClass::symmetric(2), a.clone(), a, 0.0, 1.0);
        assert!(matches!(err, Err(Error::StructureViolation { .. })));
        let z = DenseMatrix::<f64>::zeros(2, 2, Field::Real);
        let err = MatrixCurve::polar_path(
            StructureClass::orthogonal(2, DetSign::Plus),
            DenseMatrix::identity(2),
            z,
            0.0,
            1.0,
        );
        assert!(matches!(err, Err(Error::InvalidInput(_))));
        assert!(MatrixCurve::<f64>::random_pencil(StructureClass::unitary(3), 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn polar_stays_on_group_and_component() {
        for (n, det) in [(4, DetSign::Plus), (4, DetSign::Minus), (5, DetSign::Minus)] {
            let curve = MatrixCurve::<f64>::random_polar(StructureClass::orthogonal(n, det), -3.0, 3.0, 11).unwrap();
            let grid = uniform_grid(-3.0, 3.0, 101);
            for u in curve.evaluate_grid(&grid).unwrap() {
                assert!(u.orthonormality_error() <= 1e-11);
                assert!(u.is_real());
            }
            let PathDeterminants::Signs(signs) = det_along_path(&curve, &grid).unwrap() else { unreachable!() };
            assert!(signs.iter().all(|&s| s == det));
        }
    }

    #[test]
    fn cayley_dets_are_unimodular_and_avoid_minus_one() {
        let curve = MatrixCurve::<f64>::random_cayley(StructureClass::unitary(5), -1.0, 1.0, 4).unwrap();
        let grid = uniform_grid(-1.0, 1.0, 101);
        let PathDeterminants::UnitDets(dets) = det_along_path(&curve, &grid).unwrap() else { unreachable!() };
        assert!(dets.iter().all(|d| (d.norm() - 1.0).abs() <= 1e-10));
        let CurveKind::CayleyPath { h0, h1 } = curve.kind() else { unreachable!() };
        for &t in &grid {
            let h = h0 + &h1.scale(t);
            let hnorm = crate::numkernel::svd(&h).unwrap().sigma[0];
            let bound = 2.0 / (1.0 + hnorm * hnorm).sqrt() - 1e-8;
            for l in eig_general(&curve.evaluate(t).unwrap()).unwrap() {
                assert!((l + 1.0).norm() >= bound);
            }
        }
    }

    #[test]
    fn exp_angles_are_reduced_eigenvalues() {
        let curve = MatrixCurve::<f64>::random_exp(StructureClass::unitary(4), 0.0, 1.0, 2, 3.0).unwrap();
        let CurveKind::ExpPath { h0, h1 } = curve.kind() else { unreachable!() };
        let t = 0.8;
        let lam = eig_selfadjoint(&(h0 + &h1.scale(t))).unwrap().values;
        let tau = 2.0 * std::f64::consts::PI;
        let mut want: Vec<f64> = lam
            .iter()
            .map(|l| {
                let r = l.rem_euclid(tau);
                if r > std::f64::consts::PI {
                    r - tau
                } else {
                    r
                }
            })
            .collect();
        want.sort_by(f64::total_cmp);
        let got = eig_unitary_angles(&curve.evaluate(t).unwrap()).unwrap();
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-10, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn pencil_keeps_band_pattern() {
        let class = StructureClass::hermitian(6).with_bandwidth(2).unwrap();
        let curve = MatrixCurve::<f64>::random_pencil(class, -1.0, 1.0, 5).unwrap();
        for t in uniform_grid(-1.0, 1.0, 9) {
            assert_eq!(curve.evaluate(t).unwrap().band_defect(2), 0.0);
        }
    }

    #[test]
    fn grid_endpoints_exact() {
        let g = uniform_grid(-1.0f64, 1.0, 401);
        assert_eq!((g[0], g[200], g[400]), (-1.0, 0.0, 1.0));
    }
}
