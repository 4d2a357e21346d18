//! Pfaffians of real skew-symmetric matrices and sign-change root finding
//! along skew-symmetric pencils.
//!
//! For even `n`, `pf(K)^2 = det(K)`, so a sign change of `t -> pf(A + tB)`
//! certifies a double eigenvalue at zero somewhere in the bracket.

use crate::error::{invalid, Result};
use crate::numkernel::{DenseMatrix, Reflector};
use crate::scalar::Scalar;
use crate::structures::{validate, StructureClass};

/// Orthogonal tridiagonal reduction `K = Q T Q^T` of a real skew-symmetric matrix.
#[derive(Debug, Clone)]
pub(crate) struct SkewTridiagonal<T: Scalar> {
    pub(crate) q: DenseMatrix<T>,
    /// `T[i][i+1]`; `T[i+1][i]` is its negative.
    pub(crate) superdiag: Vec<T>,
    /// Number of Householder reflections in `Q`; `det Q = (-1)^reflections`.
    pub(crate) reflections: usize,
}

pub(crate) fn skew_tridiagonalize<T: Scalar>(k: &DenseMatrix<T>) -> SkewTridiagonal<T> {
    let n = k.rows();
    let mut work = k.clone();
    let mut q = DenseMatrix::identity(n);
    let mut reflections = 0;
    for col in 0..n.saturating_sub(2) {
        let x: Vec<_> = (col + 1..n).map(|i| work[(i, col)]).collect();
        if let Some(h) = Reflector::annihilating(&x, col + 1) {
            h.apply_left(&mut work);
            h.apply_right(&mut work);
            h.apply_right(&mut q);
            reflections += 1;
        }
    }
    let half = T::lit(0.5);
    let superdiag = (0..n.saturating_sub(1)).map(|i| (work[(i, i + 1)].re - work[(i + 1, i)].re) * half).collect();
    SkewTridiagonal { q: q.with_field(crate::Field::Real), superdiag, reflections }
}

fn check_even_skew<T: Scalar>(k: &DenseMatrix<T>) -> Result<()> {
    if !k.is_square() || k.rows() % 2 == 1 {
        return Err(invalid(format!("pfaffian needs an even square matrix, got {}x{}", k.rows(), k.cols())));
    }
    let v = validate(k, &StructureClass::skew_symmetric(k.rows().max(1)))?;
    if !v.valid {
        return Err(invalid(format!("matrix is not real skew-symmetric (violation {:e})", v.violation)));
    }
    Ok(())
}

/// Pfaffian of an even real skew-symmetric matrix, with
/// `pf([[0, a], [-a, 0]]) = a`.
///
/// Householder similarities reduce `K` to skew tridiagonal `T = Q^T K Q`;
/// then `pf(K) = det(Q) * T[0][1] * T[2][3] * ...`.
pub fn pfaffian<T: Scalar>(k: &DenseMatrix<T>) -> Result<T> {
    if k.rows() == 0 && k.cols() == 0 {
        return Ok(T::one());
    }
    check_even_skew(k)?;
    Ok(pfaffian_unchecked(k))
}

fn pfaffian_unchecked<T: Scalar>(k: &DenseMatrix<T>) -> T {
    let tri = skew_tridiagonalize(k);
    let prod = tri.superdiag.iter().step_by(2).fold(T::one(), |acc, &e| acc * e);
    if tri.reflections % 2 == 1 {
        -prod
    } else {
        prod
    }
}

/// Parameters where `t -> pf(A + tB)` changes sign.
///
/// The interval is sampled at `grid_points` equispaced nodes; every bracket
/// with a sign change is refined by bisection to a width of
/// `1e-12 * (t_max - t_min)`. Nodes where the Pfaffian is exactly zero are
/// reported as roots. Roots of even multiplicity are not detected.
pub fn pfaffian_sign_changes<T: Scalar>(
    a: &DenseMatrix<T>,
    b: &DenseMatrix<T>,
    t_min: T,
    t_max: T,
    grid_points: usize,
) -> Result<Vec<T>> {
    check_even_skew(a)?;
    check_even_skew(b)?;
    if a.shape() != b.shape() {
        return Err(invalid("pencil matrices differ in shape"));
    }
    if grid_points < 2 || !(t_min.is_finite() && t_max.is_finite()) || t_max <= t_min {
        return Err(invalid("need at least two grid points on a nonempty interval"));
    }
    let pf_at = |t: T| pfaffian_unchecked(&(a + &b.scale(t)));
    let span = t_max - t_min;
    let step = span / T::lit((grid_points - 1) as f64);
    let nodes: Vec<T> =
        (0..grid_points).map(|i| if i + 1 == grid_points { t_max } else { t_min + step * T::lit(i as f64) }).collect();
    let values: Vec<T> = nodes.iter().map(|&t| pf_at(t)).collect();
    let width = T::tol(1e-12) * span;

    let mut roots = Vec::new();
    for i in 0..grid_points {
        if values[i] == T::zero() {
            roots.push(nodes[i]);
            continue;
        }
        if i + 1 == grid_points || values[i + 1] == T::zero() {
            continue;
        }
        if (values[i] > T::zero()) == (values[i + 1] > T::zero()) {
            continue;
        }
        let (mut lo, mut hi) = (nodes[i], nodes[i + 1]);
        let lo_positive = values[i] > T::zero();
        let mut exact = None;
        while hi - lo > width {
            let mid = lo + (hi - lo) * T::lit(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = pf_at(mid);
            if v == T::zero() {
                exact = Some(mid);
                break;
            }
            if (v > T::zero()) == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(exact.unwrap_or(lo + (hi - lo) * T::lit(0.5)));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skew4(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> DenseMatrix<f64> {
        DenseMatrix::from_rows(&[&[0.0, a, b, c], &[-a, 0.0, d, e], &[-b, -d, 0.0, f], &[-c, -e, -f, 0.0]])
    }

    #[test]
    fn two_by_two_sign_convention() {
        let k = DenseMatrix::from_rows(&[&[0.0, 5.0], &[-5.0, 0.0]]);
        assert_eq!(pfaffian(&k).unwrap(), 5.0);
    }

    #[test]
    fn four_by_four_expansion() {
        let (a, b, c, d, e, f) = (1.5, -0.3, 2.0, 0.7, -1.1, 0.4);
        let want = a * f - b * e + c * d;
        let got = pfaffian(&skew4(a, b, c, d, e, f)).unwrap();
        assert!((got - want).abs() < 1e-14, "{got} vs {want}");
    }

    #[test]
    fn odd_or_non_skew_rejected() {
        assert!(pfaffian(&DenseMatrix::<f64>::zeros(3, 3, crate::Field::Real)).is_err());
        assert!(pfaffian(&DenseMatrix::<f64>::identity(2)).is_err());
    }

    #[test]
    fn scalar_pencil_root() {
        let a = DenseMatrix::<f64>::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let b = a.scale(-1.0);
        let roots = pfaffian_sign_changes(&a, &b, 0.0, 2.0, 601).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 1.0).abs() <= 2e-12);
    }

    #[test]
    fn block_pencil_root() {
        let a = skew4(1.0, 0.0, 0.0, 0.0, 0.0, 2.0);
        let b = skew4(-1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let roots = pfaffian_sign_changes(&a, &b, -0.37, 2.0, 50).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 1.0).abs() <= 1e-12 * 2.37);
    }
}
