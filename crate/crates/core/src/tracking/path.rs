use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{uniform_grid, MatrixCurve};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use crate::structures::canonical_spectrum;

use super::assignment::min_cost_assignment;
use super::geometry::{Geometry, Metric};

/// Matched spectral branches along a curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralPath<T> {
    /// Ascending parameter values.
    pub t_grid: Vec<T>,
    /// `branches[i][j]` is branch `j` at `t_grid[i]`.
    pub branches: Vec<Vec<T>>,
    pub metric: Metric,
    /// Intervals where the matching could not be certified at the minimum
    /// step.
    pub ambiguous: Vec<(T, T)>,
}

impl<T: Scalar> SpectralPath<T> {
    pub fn branch_count(&self) -> usize {
        self.branches.first().map_or(0, Vec::len)
    }

    /// Values of branch `j` at every node.
    pub fn branch(&self, j: usize) -> Vec<T> {
        self.branches.iter().map(|b| b[j]).collect()
    }

    /// Largest absolute branch value.
    pub fn spectral_scale(&self) -> T {
        self.branches.iter().flatten().fold(T::zero(), |m, x| m.max(x.abs()))
    }
}

pub(crate) fn node_values<T: Scalar>(curve: &MatrixCurve<T>, t: T) -> Result<Vec<T>> {
    Ok(canonical_spectrum(&curve.evaluate(t)?, curve.class())?.values().to_vec())
}

/// Tracks the canonical spectrum of `curve` over its domain.
///
/// Starts from `initial_grid` equally spaced nodes and matches neighbouring
/// nodes by minimal-cost assignment against a linear prediction from the
/// previous step. An interval is bisected while the largest deviation from
/// the prediction exceeds half the smallest eigenvalue gap at its ends;
/// intervals still unresolved at `1e-12` of the domain length are recorded
/// as ambiguous.
pub fn track<T: Scalar>(curve: &MatrixCurve<T>, initial_grid: usize) -> Result<SpectralPath<T>> {
    if initial_grid < 8 {
        return Err(invalid(format!("grid needs at least 8 nodes, got {initial_grid}")));
    }
    let (t_min, t_max) = curve.domain();
    let grid = uniform_grid(t_min, t_max, initial_grid);
    let spectra = grid.par_iter().map(|&t| node_values(curve, t)).collect::<Result<Vec<_>>>()?;
    let mut tracker = Tracker {
        curve,
        geom: Geometry::for_class(curve.class()),
        min_step: T::tol(1e-12) * (t_max - t_min),
        ts: vec![grid[0]],
        vals: vec![spectra[0].clone()],
        ambiguous: vec![],
    };
    for (&t, s) in grid.iter().zip(spectra).skip(1) {
        tracker.advance(t, s)?;
    }
    Ok(SpectralPath {
        t_grid: tracker.ts,
        branches: tracker.vals,
        metric: tracker.geom.metric,
        ambiguous: tracker.ambiguous,
    })
}

struct Tracker<'a, T: Scalar> {
    curve: &'a MatrixCurve<T>,
    geom: Geometry<T>,
    min_step: T,
    ts: Vec<T>,
    vals: Vec<Vec<T>>,
    ambiguous: Vec<(T, T)>,
}

impl<T: Scalar> Tracker<'_, T> {
    fn prediction(&self, tb: T) -> Vec<T> {
        let k = self.ts.len();
        let ta = self.ts[k - 1];
        let xa = &self.vals[k - 1];
        if k < 2 {
            return xa.clone();
        }
        let back = ta - self.ts[k - 2];
        let ratio = (tb - ta) / back;
        // slopes from much shorter steps only amplify rounding
        if ratio > T::lit(4.0) {
            return xa.clone();
        }
        xa.iter()
            .zip(&self.vals[k - 2])
            .map(|(&x, &prev)| self.geom.shift(x, self.geom.diff(prev, x) * ratio))
            .collect()
    }

    fn advance(&mut self, t_end: T, s_end: Vec<T>) -> Result<()> {
        let mut pending = vec![(t_end, s_end)];
        while let Some((tb, sb)) = pending.pop() {
            let ta = *self.ts.last().expect("path has a start node");
            let xa = self.vals.last().expect("path has a start node");
            let n = xa.len();
            let pred = self.prediction(tb);
            let cost: Vec<T> = (0..n * n).map(|q| self.geom.dist(pred[q / n], sb[q % n])).collect();
            let perm = min_cost_assignment(n, &cost);
            let residual = (0..n).fold(T::zero(), |m, i| m.max(cost[i * n + perm[i]]));
            let gap = self.geom.node_gap(xa).min(self.geom.node_gap(&sb));
            let scale = xa.iter().chain(&sb).fold(T::min_positive_value(), |m, x| m.max(x.abs()));
            let resolved = residual <= gap * T::lit(0.5) || residual <= T::tol(1e-10) * scale;
            if resolved || tb - ta <= self.min_step {
                if !resolved {
                    self.ambiguous.push((ta, tb));
                }
                self.ts.push(tb);
                self.vals.push(perm.iter().map(|&j| sb[j]).collect());
            } else {
                let tm = ta + (tb - ta) * T::lit(0.5);
                let sm = node_values(self.curve, tm)?;
                pending.push((tb, sb));
                pending.push((tm, sm));
            }
        }
        Ok(())
    }
}
