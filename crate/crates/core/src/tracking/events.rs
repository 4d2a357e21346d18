use serde::{Deserialize, Serialize};

use crate::curves::MatrixCurve;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::structures::CollisionClass;

use super::geometry::Geometry;
use super::path::{node_values, SpectralPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Crossing,
    Avoided,
    /// Refined gap between the crossing and avoidance tolerances.
    Ambiguous,
}

/// What approached what.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventTarget {
    Pair(usize, usize),
    /// A branch and the distinguished point of the event's collision class.
    Point(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapEvent<T> {
    pub t_star: T,
    pub target: EventTarget,
    pub min_gap: T,
    /// Spectral value at the closest approach.
    pub location: T,
    pub classification: Classification,
    pub collision_class: CollisionClass,
}

/// Thresholds used by [`detect_events`].
#[derive(Debug, Clone, Copy)]
pub struct EventOptions {
    /// Local minima below this multiple of the median per-node gap are refined.
    pub threshold_factor: f64,
    /// Crossing below `tol_cross * scale`.
    pub tol_cross: f64,
    /// Avoided at or above `tol_avoid * scale`.
    pub tol_avoid: f64,
}

impl Default for EventOptions {
    fn default() -> Self {
        Self { threshold_factor: 0.1, tol_cross: 1e-8, tol_avoid: 1e-6 }
    }
}

pub fn detect_events<T: Scalar>(path: &SpectralPath<T>, curve: &MatrixCurve<T>) -> Result<Vec<GapEvent<T>>> {
    detect_events_with(path, curve, EventOptions::default())
}

struct Candidate<T> {
    node: usize,
    target: EventTarget,
    collision: CollisionClass,
    point: Option<T>,
}

/// Finds close approaches along `path`, refines them by golden-section search
/// on the curve and classifies each one.
///
/// Pair events come from interior local minima of the distance between two
/// neighbouring branches; point events from local minima of the distance of
/// the nearest branch to `0` (skew pairs) or to `0` and `pi` (orthogonal
/// angles).
pub fn detect_events_with<T: Scalar>(
    path: &SpectralPath<T>,
    curve: &MatrixCurve<T>,
    opts: EventOptions,
) -> Result<Vec<GapEvent<T>>> {
    let geom = Geometry::<T>::for_class(curve.class());
    let nodes = path.t_grid.len();
    let nb = path.branch_count();
    if nodes < 3 || nb == 0 {
        return Ok(vec![]);
    }

    let mut node_gaps: Vec<T> = path
        .branches
        .iter()
        .map(|b| {
            let mut g = T::infinity();
            for (j, &x) in b.iter().enumerate() {
                for &y in &b[j + 1..] {
                    g = g.min(geom.dist(x, y));
                }
                for &(p, _) in &geom.points {
                    g = g.min(geom.dist(x, p));
                }
            }
            g
        })
        .filter(|g| g.is_finite())
        .collect();
    if node_gaps.is_empty() {
        return Ok(vec![]);
    }
    node_gaps.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let median = node_gaps[node_gaps.len() / 2];
    let threshold = T::lit(opts.threshold_factor) * median;

    let is_local_min = |d: &dyn Fn(usize) -> T, i: usize| {
        let (prev, here, next) = (d(i - 1), d(i), d(i + 1));
        here < threshold && here <= prev && here <= next && (here < prev || here < next)
    };

    let mut candidates = Vec::new();
    for j in 0..nb {
        for k in j + 1..nb {
            let d = |i: usize| geom.dist(path.branches[i][j], path.branches[i][k]);
            for i in 1..nodes - 1 {
                if is_local_min(&d, i) && adjacent(&geom, &path.branches[i], j, k) {
                    candidates.push(Candidate {
                        node: i,
                        target: EventTarget::Pair(j, k),
                        collision: CollisionClass::PairGeneric,
                        point: None,
                    });
                }
            }
        }
        for &(p, collision) in &geom.points {
            let d = |i: usize| geom.dist(path.branches[i][j], p);
            for i in 1..nodes - 1 {
                let nearest = path.branches[i].iter().all(|&x| geom.dist(x, p) >= d(i));
                if nearest && is_local_min(&d, i) {
                    candidates.push(Candidate { node: i, target: EventTarget::Point(j), collision, point: Some(p) });
                }
            }
        }
    }

    let (t_min, t_max) = curve.domain();
    let range = t_max - t_min;
    let scale = path.spectral_scale().max(T::min_positive_value());
    let tol_cross = T::tol(opts.tol_cross) * scale;
    let tol_avoid = T::tol(opts.tol_avoid) * scale;

    let mut events = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let i = cand.node;
        let at = &path.branches[i];
        let (lo, hi) = (path.t_grid[i - 1], path.t_grid[i + 1]);
        let (t_star, min_gap, location) = match (cand.target, cand.point) {
            (EventTarget::Pair(j, k), _) => {
                let reference = geom.shift(at[j], geom.diff(at[j], at[k]) * T::lit(0.5));
                let rank = pair_rank(&geom, at, j, k, reference);
                let gap_at = |t: T| -> Result<(T, T)> {
                    let y = shifted_sorted(&geom, &node_values(curve, t)?, reference);
                    let r = rank.min(y.len() - 2);
                    Ok((y[r + 1] - y[r], geom.shift(reference, (y[r] + y[r + 1]) * T::lit(0.5))))
                };
                refine(lo, hi, path.t_grid[i], range, gap_at)?
            }
            (EventTarget::Point(_), Some(p)) => {
                let gap_at = |t: T| -> Result<(T, T)> {
                    let d = node_values(curve, t)?.iter().fold(T::infinity(), |m, &x| m.min(geom.dist(x, p)));
                    Ok((d, p))
                };
                refine(lo, hi, path.t_grid[i], range, gap_at)?
            }
            (EventTarget::Point(_), None) => unreachable!("point events carry their point"),
        };
        let classification = if min_gap <= tol_cross {
            Classification::Crossing
        } else if min_gap >= tol_avoid {
            Classification::Avoided
        } else {
            Classification::Ambiguous
        };
        events.push(GapEvent {
            t_star,
            target: cand.target,
            min_gap,
            location,
            classification,
            collision_class: cand.collision,
        });
    }
    Ok(dedup(events, &geom, range, scale))
}

/// True when no third branch lies strictly between `j` and `k`.
fn adjacent<T: Scalar>(geom: &Geometry<T>, values: &[T], j: usize, k: usize) -> bool {
    let (a, b) = (values[j], values[k]);
    let span = geom.diff(a, b);
    values.iter().enumerate().all(|(m, &x)| {
        if m == j || m == k {
            return true;
        }
        let s = geom.diff(a, x);
        !((span > T::zero() && s > T::zero() && s < span) || (span < T::zero() && s < T::zero() && s > span))
    })
}

fn shifted_sorted<T: Scalar>(geom: &Geometry<T>, values: &[T], reference: T) -> Vec<T> {
    let mut y: Vec<T> = values.iter().map(|&x| geom.diff(reference, x)).collect();
    y.sort_by(|a, b| a.partial_cmp(b).expect("finite spectrum"));
    y
}

fn pair_rank<T: Scalar>(geom: &Geometry<T>, values: &[T], j: usize, k: usize, reference: T) -> usize {
    let low = geom.diff(reference, values[j]).min(geom.diff(reference, values[k]));
    values.iter().filter(|&&x| geom.diff(reference, x) < low).count()
}

/// Golden-section minimization of `f` over `[lo, hi]`, seeded with the
/// interior node `mid`. Returns `(t, f(t).0, f(t).1)` at the best point seen.
fn refine<T: Scalar>(lo: T, hi: T, mid: T, range: T, f: impl Fn(T) -> Result<(T, T)>) -> Result<(T, T, T)> {
    let inv_phi = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let stop = T::tol(1e-13) * range;
    let (mut a, mut b) = (lo, hi);
    let mut best = {
        let (g, loc) = f(mid)?;
        (mid, g, loc)
    };
    let consider = |t: T, v: (T, T), best: &mut (T, T, T)| {
        if v.0 < best.1 {
            *best = (t, v.0, v.1);
        }
        v.0
    };
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = consider(c, f(c)?, &mut best);
    let mut fd = consider(d, f(d)?, &mut best);
    while b - a > stop {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = consider(c, f(c)?, &mut best);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = consider(d, f(d)?, &mut best);
        }
    }
    Ok(best)
}

/// Drops repeated detections of one approach, keeping the smallest gap.
fn dedup<T: Scalar>(mut events: Vec<GapEvent<T>>, geom: &Geometry<T>, range: T, scale: T) -> Vec<GapEvent<T>> {
    events.sort_by(|a, b| a.t_star.partial_cmp(&b.t_star).expect("finite"));
    let mut out: Vec<GapEvent<T>> = Vec::with_capacity(events.len());
    for e in events {
        let same = out.iter_mut().rev().take_while(|o| e.t_star - o.t_star <= T::tol(1e-9) * range).find(|o| {
            o.collision_class == e.collision_class && geom.dist(o.location, e.location) <= T::tol(1e-6) * scale
        });
        match same {
            Some(o) => {
                if e.min_gap < o.min_gap {
                    *o = e;
                }
            }
            None => out.push(e),
        }
    }
    out
}
