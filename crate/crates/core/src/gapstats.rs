//! Small-gap statistics of random structured matrices.
//!
//! If the matrices with a collision of a given kind form a set of
//! codimension `c`, the probability that the corresponding gap of a random
//! member is below `eps` behaves like `eps^c` for small `eps`. The exponent is
//! estimated from the lower tail of sampled gaps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numkernel::DenseMatrix;
use crate::rng::SampleStream;
use crate::scalar::Scalar;
use crate::structures::{
    canonical_spectrum, expected_codimension, sample, CanonicalSpectrum, Codimension, CollisionClass, StructureClass,
};

/// Minimal gaps of one matrix, per collision location. A field is `None` when
/// the location does not apply to the class or the spectrum is too short.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GapSample<T> {
    pub pair_generic: Option<T>,
    pub at_zero: Option<T>,
    pub at_plus_one: Option<T>,
    pub at_minus_one: Option<T>,
}

impl<T: Scalar> GapSample<T> {
    pub fn get(&self, collision: CollisionClass) -> Option<T> {
        match collision {
            CollisionClass::PairGeneric => self.pair_generic,
            CollisionClass::AtZero => self.at_zero,
            CollisionClass::AtPlusOne => self.at_plus_one,
            CollisionClass::AtMinusOne => self.at_minus_one,
        }
    }
}

fn min_pairwise<T: Scalar>(values: &[T], dist: impl Fn(T, T) -> T) -> Option<T> {
    let mut best: Option<T> = None;
    for (j, &x) in values.iter().enumerate() {
        for &y in &values[j + 1..] {
            let d = dist(x, y);
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best
}

fn min_of<T: Scalar>(values: impl Iterator<Item = T>) -> Option<T> {
    values.fold(None, |m: Option<T>, x| Some(m.map_or(x, |b| b.min(x))))
}

/// Labeled minimal gaps of `a`, a member of `class`.
pub fn gap_sample<T: Scalar>(a: &DenseMatrix<T>, class: &StructureClass) -> Result<GapSample<T>> {
    let spectrum = canonical_spectrum(a, class)?;
    let linear = |x: T, y: T| (x - y).abs();
    Ok(match &spectrum {
        CanonicalSpectrum::RealEigs(v) | CanonicalSpectrum::SingularValues(v) => {
            GapSample { pair_generic: min_pairwise(v, linear), ..Default::default() }
        }
        CanonicalSpectrum::SkewPairs { values, .. } => GapSample {
            pair_generic: min_pairwise(values, linear),
            at_zero: min_of(values.iter().copied()),
            ..Default::default()
        },
        CanonicalSpectrum::Angles { free, .. } if class.kind() == crate::StructureKind::Orthogonal => GapSample {
            pair_generic: min_pairwise(free, linear),
            at_zero: None,
            at_plus_one: min_of(free.iter().copied()),
            at_minus_one: min_of(free.iter().map(|&x| T::PI() - x)),
        },
        CanonicalSpectrum::Angles { free, .. } => {
            let tau = T::PI() + T::PI();
            let circular = |x: T, y: T| {
                let d = (x - y).abs() % tau;
                d.min(tau - d)
            };
            GapSample { pair_generic: min_pairwise(free, circular), ..Default::default() }
        }
    })
}

/// Maximum-likelihood fit of the lower-tail exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit<T> {
    pub exponent: T,
    /// `exponent / sqrt(tail_count)`.
    pub stderr: T,
    pub tail_fraction: f64,
    pub tail_count: usize,
    pub sample_count: usize,
}

pub const MIN_SAMPLES: usize = 100;

fn sorted_tail<T: Scalar>(gaps: &[T], q: f64) -> Result<(Vec<T>, usize)> {
    if !(q > 0.0 && q <= 0.5) {
        return Err(invalid(format!("tail fraction must lie in (0, 0.5], got {q}")));
    }
    if gaps.len() < MIN_SAMPLES {
        return Err(Error::InsufficientData(format!("{} samples, need at least {MIN_SAMPLES}", gaps.len())));
    }
    if gaps.iter().any(|g| !(g.is_finite() && *g > T::zero())) {
        return Err(Error::InsufficientData("gaps must be positive and finite".into()));
    }
    let mut sorted = gaps.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let k = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len() - 1);
    Ok((sorted, k))
}

/// Estimates `c` in `P(gap < eps) ~ eps^c` from the `ceil(q N)` smallest gaps:
/// `c = k / sum_i ln(g_(k+1) / g_(i))`.
pub fn estimate_exponent<T: Scalar>(gaps: &[T], q: f64) -> Result<TailFit<T>> {
    let (sorted, k) = sorted_tail(gaps, q)?;
    let threshold = sorted[k];
    let sum: T = sorted[..k].iter().map(|&g| (threshold / g).ln()).sum();
    if sum <= T::zero() {
        return Err(Error::InsufficientData("tail values are all equal".into()));
    }
    let kt = T::from_usize(k).expect("count fits");
    let exponent = kt / sum;
    Ok(TailFit { exponent, stderr: exponent / kt.sqrt(), tail_fraction: q, tail_count: k, sample_count: gaps.len() })
}

/// Least-squares slope of `ln F(g)` against `ln g` over the lower tail of
/// the empirical distribution. A cross-check for [`estimate_exponent`].
pub fn loglog_slope<T: Scalar>(gaps: &[T], q: f64) -> Result<T> {
    let (sorted, k) = sorted_tail(gaps, q)?;
    let n = T::from_usize(sorted.len()).expect("count fits");
    let pts: Vec<(T, T)> =
        (0..k).map(|i| (sorted[i].ln(), (T::from_usize(i + 1).expect("count fits") / n).ln())).collect();
    let kt = T::from_usize(k).expect("count fits");
    let mx = pts.iter().map(|p| p.0).sum::<T>() / kt;
    let my = pts.iter().map(|p| p.1).sum::<T>() / kt;
    let sxx: T = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= T::zero() {
        return Err(Error::InsufficientData("tail values are all equal".into()));
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The fit is too noisy to separate neighbouring integers.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodimEstimate<T> {
    pub exponent: T,
    pub stderr: T,
    pub tail_fraction: f64,
    pub sample_count: usize,
    pub expected: u32,
    pub verdict: Verdict,
}

/// Pass when `|c - expected| <= max(3 stderr, 0.5)`; inconclusive when
/// `3 stderr >= 1`.
pub fn judge<T: Scalar>(fit: &TailFit<T>, expected: u32) -> Verdict {
    let three_se = T::lit(3.0) * fit.stderr;
    if three_se >= T::one() {
        Verdict::Inconclusive
    } else if (fit.exponent - T::lit(expected as f64)).abs() <= three_se.max(T::lit(0.5)) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Gap samples for matrices `0..count` of the ensemble of `class` under
/// `seed`. Matrix `i` comes from stream `i`, so the result does not depend
/// on the number of worker threads.
pub fn sample_gaps<T: Scalar>(class: &StructureClass, count: usize, seed: u64) -> Result<Vec<GapSample<T>>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let a: DenseMatrix<T> = sample(class, &mut SampleStream::new(seed, i));
            gap_sample(&a, class)
        })
        .collect()
}

/// Samples `count` members of `class`, fits the tail exponent of the gap at
/// `collision` and compares it with the expected codimension.
pub fn verify_codimension<T: Scalar>(
    class: &StructureClass,
    collision: CollisionClass,
    count: usize,
    seed: u64,
    q: f64,
) -> Result<CodimEstimate<T>> {
    let expected = match expected_codimension(class, collision) {
        Codimension::Value(v) => v,
        Codimension::Impossible => {
            return Err(invalid(format!("a {collision} collision cannot occur in {class}")));
        }
    };
    let gaps = sample_gaps::<T>(class, count, seed)?
        .iter()
        .map(|s| s.get(collision).ok_or_else(|| Error::Internal(format!("no {collision} gap for {class}"))))
        .collect::<Result<Vec<T>>>()?;
    let fit = estimate_exponent(&gaps, q)?;
    Ok(CodimEstimate {
        exponent: fit.exponent,
        stderr: fit.stderr,
        tail_fraction: q,
        sample_count: count,
        expected,
        verdict: judge(&fit, expected),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{DetSign, StructureKind};
    use std::f64::consts::PI;

    fn uniform(n: usize, seed: u64) -> Vec<f64> {
        let mut s = SampleStream::new(seed, 0);
        (0..n).map(|_| s.uniform_open::<f64>()).collect()
    }

    #[test]
    fn symmetric_diagonal_gap() {
        let a = DenseMatrix::<f64>::diag_real(&[0.0, 0.3, 1.0]);
        let g = gap_sample(&a, &StructureClass::symmetric(3)).unwrap();
        assert!((g.pair_generic.unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(g.at_zero, None);
    }

    #[test]
    fn skew_blocks_gap() {
        let (a1, a2) = (1.0, 1.5);
        let a = DenseMatrix::<f64>::from_rows(&[
            &[0.0, a1, 0.0, 0.0],
            &[-a1, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, a2],
            &[0.0, 0.0, -a2, 0.0],
        ]);
        let g = gap_sample(&a, &StructureClass::skew_symmetric(4)).unwrap();
        assert!((g.pair_generic.unwrap() - 0.5).abs() < 1e-14);
        assert!((g.at_zero.unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn orthogonal_angles_gap() {
        let mut a = DenseMatrix::<f64>::zeros(6, 6, crate::Field::Real);
        for (j, th) in [0.2f64, 1.0, 2.8].into_iter().enumerate() {
            let (s, c) = th.sin_cos();
            a[(2 * j, 2 * j)].re = c;
            a[(2 * j, 2 * j + 1)].re = s;
            a[(2 * j + 1, 2 * j)].re = -s;
            a[(2 * j + 1, 2 * j + 1)].re = c;
        }
        let g = gap_sample(&a, &StructureClass::orthogonal(6, DetSign::Plus)).unwrap();
        assert!((g.at_plus_one.unwrap() - 0.2).abs() < 1e-13);
        assert!((g.at_minus_one.unwrap() - (PI - 2.8)).abs() < 1e-13);
        assert!((g.pair_generic.unwrap() - 0.8).abs() < 1e-13);
    }

    #[test]
    fn unitary_gap_wraps() {
        let d: Vec<_> = [3.0f64, -3.0, 0.0].iter().map(|&t| num_complex::Complex::from_polar(1.0, t)).collect();
        let a = DenseMatrix::<f64>::diag_complex(&d);
        let g = gap_sample(&a, &StructureClass::unitary(3)).unwrap();
        assert!((g.pair_generic.unwrap() - (2.0 * PI - 6.0)).abs() < 1e-13);
    }

    #[test]
    fn violation_is_rejected() {
        let a = DenseMatrix::<f64>::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(gap_sample(&a, &StructureClass::symmetric(2)), Err(Error::StructureViolation { .. })));
    }

    #[test]
    fn exact_power_laws() {
        for c in [1.0f64, 2.0, 3.0] {
            let g: Vec<f64> = uniform(100_000, 17).iter().map(|u| u.powf(1.0 / c)).collect();
            let fit = estimate_exponent(&g, 0.1).unwrap();
            assert!((fit.exponent - c).abs() <= 0.1, "{c}: {fit:?}");
            assert!((fit.stderr - fit.exponent / (fit.tail_count as f64).sqrt()).abs() < 1e-15);
            let slope = loglog_slope(&g, 0.1).unwrap();
            assert!((slope - c).abs() <= 0.2, "{c}: slope {slope}");
        }
    }

    #[test]
    fn halving_tail_is_stable() {
        let g: Vec<f64> = uniform(100_000, 5).iter().map(|u| u.sqrt()).collect();
        let a = estimate_exponent(&g, 0.1).unwrap();
        let b = estimate_exponent(&g, 0.05).unwrap();
        let combined = (a.stderr * a.stderr + b.stderr * b.stderr).sqrt();
        assert!((a.exponent - b.exponent).abs() <= 2.0 * combined);
    }

    #[test]
    fn estimator_preconditions() {
        assert!(matches!(estimate_exponent(&[1.0f64; 50], 0.1), Err(Error::InsufficientData(_))));
        assert!(matches!(estimate_exponent(&[1.0f64; 200], 0.1), Err(Error::InsufficientData(_))));
        let mut g = uniform(200, 1);
        assert!(matches!(estimate_exponent(&g, 0.7), Err(Error::InvalidInput(_))));
        g[3] = 0.0;
        assert!(matches!(estimate_exponent(&g, 0.1), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn verdicts() {
        let fit = |c: f64, k: usize| TailFit {
            exponent: c,
            stderr: c / (k as f64).sqrt(),
            tail_fraction: 0.1,
            tail_count: k,
            sample_count: 10 * k,
        };
        assert_eq!(judge(&fit(2.3, 1000), 2), Verdict::Pass);
        assert_eq!(judge(&fit(2.7, 1000), 2), Verdict::Fail);
        assert_eq!(judge(&fit(2.0, 9), 2), Verdict::Inconclusive);
    }

    #[test]
    fn impossible_collision_rejected() {
        let r = verify_codimension::<f64>(&StructureClass::symmetric(4), CollisionClass::AtZero, 200, 1, 0.1);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn small_skew_oracles() {
        // 2x2: a = |x|; 3x3: a = |(x, y, z)|
        let two = verify_codimension::<f64>(&StructureClass::skew_symmetric(2), CollisionClass::AtZero, 4000, 3, 0.1)
            .unwrap();
        assert_eq!(two.verdict, Verdict::Pass, "{two:?}");
        let three = verify_codimension::<f64>(&StructureClass::skew_symmetric(3), CollisionClass::AtZero, 4000, 3, 0.1)
            .unwrap();
        assert_eq!(three.verdict, Verdict::Pass, "{three:?}");
        assert_eq!((two.expected, three.expected), (1, 3));
    }

    #[test]
    fn rect_samples_have_pair_gap() {
        let class = StructureClass::rect(StructureKind::RectComplex, 5, 4).unwrap();
        let s = sample_gaps::<f64>(&class, 10, 2).unwrap();
        assert!(s.iter().all(|g| g.pair_generic.is_some() && g.at_zero.is_none()));
    }

    #[test]
    fn samples_do_not_depend_on_threads() {
        let class = StructureClass::hermitian(4);
        let a = sample_gaps::<f64>(&class, 64, 9).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| sample_gaps::<f64>(&class, 64, 9).unwrap());
        assert_eq!(a, b);
    }
}
