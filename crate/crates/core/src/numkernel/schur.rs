//! Eigenvalues of general square matrices by Hessenberg reduction and the
//! shifted complex QR iteration.

use num_complex::Complex;

use super::matrix::{c, DenseMatrix};
use super::qr::Reflector;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Unitary Hessenberg form `H = Q^H A Q` (only `H` is returned).
fn hessenberg<T: Scalar>(a: &DenseMatrix<T>) -> DenseMatrix<T> {
    let n = a.rows();
    let mut h = a.clone().with_field(crate::Field::Complex);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<_> = (k + 1..n).map(|i| h[(i, k)]).collect();
        if let Some(refl) = Reflector::annihilating(&x, k + 1) {
            refl.apply_left(&mut h);
            refl.apply_right(&mut h);
            for i in k + 2..n {
                h[(i, k)] = c(T::zero(), T::zero());
            }
        }
    }
    h
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` sending `(a, b)` to `(r, 0)`.
fn givens<T: Scalar>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let na = a.norm();
    let nb = b.norm();
    if nb == T::zero() {
        return (T::one(), c(T::zero(), T::zero()));
    }
    if na == T::zero() {
        return (T::zero(), c(T::one(), T::zero()));
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

fn wilkinson_shift<T: Scalar>(a: Complex<T>, b: Complex<T>, cc: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let tr = (a + d) * half;
    let disc = ((a - d) * half * ((a - d) * half) + b * cc).sqrt();
    let l1 = tr + disc;
    let l2 = tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square matrix, in no particular order.
pub fn eig_general<T: Scalar>(a: &DenseMatrix<T>) -> Result<Vec<Complex<T>>> {
    a.ensure_finite()?;
    a.ensure_square()?;
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(a);
    let eps = T::epsilon();
    let norm = h.frobenius_norm().max(T::min_positive_value());
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == T::zero() {
                s = norm;
            }
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = c(T::zero(), T::zero());
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * n {
            return Err(Error::Internal("QR iteration did not converge".into()));
        }
        let mu = if iter.is_multiple_of(11) {
            h[(hi, hi)] + c(h[(hi, hi - 1)].norm() * T::lit(0.75), h[(hi, hi - 1)].norm() * T::lit(0.4375))
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let mut x = h[(l, l)] - mu;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (cs, sn) = givens(x, y);
            let start = if k > l { k - 1 } else { l };
            for j in start..=hi {
                let (u, v) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = u * cs + sn * v;
                h[(k + 1, j)] = -sn.conj() * u + v * cs;
            }
            if k > l {
                h[(k + 1, k - 1)] = c(T::zero(), T::zero());
            }
            let stop = (k + 2).min(hi);
            for i in l..=stop {
                let (u, v) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = u * cs + v * sn.conj();
                h[(i, k + 1)] = -u * sn + v * cs;
            }
        }
    }
    Ok((0..n).map(|i| h[(i, i)]).collect())
}

/// Eigen-angles of a unitary matrix, ascending in `(-pi, pi]`.
pub fn eig_unitary_angles<T: Scalar>(u: &DenseMatrix<T>) -> Result<Vec<T>> {
    u.ensure_finite()?;
    if !u.is_square() {
        return Err(Error::StructureViolation {
            what: "unitary matrix must be square".into(),
            violation: f64::INFINITY,
        });
    }
    let defect = u.orthonormality_error();
    if defect > T::tol(1e-10) {
        return Err(Error::StructureViolation { what: "matrix is not unitary".into(), violation: defect.as_f64() });
    }
    let mut angles: Vec<T> = eig_general(u)?.into_iter().map(angle_of).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(angles)
}

/// Argument in `(-pi, pi]`.
pub(crate) fn angle_of<T: Scalar>(z: Complex<T>) -> T {
    let theta = z.im.atan2(z.re);
    if theta <= -T::PI() {
        T::PI()
    } else {
        theta
    }
}
