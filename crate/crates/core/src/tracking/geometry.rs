use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::structures::{CollisionClass, StructureClass, StructureKind};

/// How distances between branch values are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Linear,
    /// Angles in `(-pi, pi]`, compared modulo `2 pi`.
    Circular,
}

/// Maps a real number into `(-pi, pi]`.
pub(crate) fn wrap_angle<T: Scalar>(x: T) -> T {
    let pi = T::PI();
    let tau = pi + pi;
    let mut r = x % tau;
    if r > pi {
        r -= tau;
    } else if r <= -pi {
        r += tau;
    }
    r
}

/// Metric and distinguished points for the branches of one structure class.
#[derive(Debug, Clone)]
pub(crate) struct Geometry<T> {
    pub metric: Metric,
    /// Points a branch can collide with, together with the mirror branch that
    /// meets it there (`-a` for skew pairs, `-theta` for orthogonal angles).
    pub points: Vec<(T, CollisionClass)>,
}

impl<T: Scalar> Geometry<T> {
    pub fn for_class(class: &StructureClass) -> Self {
        match class.kind() {
            StructureKind::SkewSymmetric => {
                Self { metric: Metric::Linear, points: vec![(T::zero(), CollisionClass::AtZero)] }
            }
            StructureKind::Orthogonal => Self {
                metric: Metric::Linear,
                points: vec![(T::zero(), CollisionClass::AtPlusOne), (T::PI(), CollisionClass::AtMinusOne)],
            },
            StructureKind::Unitary => Self { metric: Metric::Circular, points: vec![] },
            _ => Self { metric: Metric::Linear, points: vec![] },
        }
    }

    pub fn dist(&self, x: T, y: T) -> T {
        match self.metric {
            Metric::Linear => (x - y).abs(),
            Metric::Circular => wrap_angle(x - y).abs(),
        }
    }

    /// Signed displacement from `x` to `y`.
    pub fn diff(&self, x: T, y: T) -> T {
        match self.metric {
            Metric::Linear => y - x,
            Metric::Circular => wrap_angle(y - x),
        }
    }

    pub fn shift(&self, x: T, d: T) -> T {
        match self.metric {
            Metric::Linear => x + d,
            Metric::Circular => wrap_angle(x + d),
        }
    }

    /// Smallest distance between eigenvalues at one node, counting the
    /// mirror images at the distinguished points.
    pub fn node_gap(&self, values: &[T]) -> T {
        let mut gap = T::infinity();
        for (j, &x) in values.iter().enumerate() {
            for &y in &values[j + 1..] {
                gap = gap.min(self.dist(x, y));
            }
            for &(p, _) in &self.points {
                gap = gap.min(T::lit(2.0) * self.dist(x, p));
            }
        }
        gap
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wrap_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(-7.0) - (-7.0 + 2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn circular_distance() {
        let g = Geometry::<f64>::for_class(&StructureClass::unitary(3));
        assert!((g.dist(3.0, -3.0) - (2.0 * PI - 6.0)).abs() < 1e-15);
        assert!((g.diff(3.0, -3.0) - (2.0 * PI - 6.0)).abs() < 1e-15);
    }

    #[test]
    fn node_gap_counts_mirrors() {
        let g = Geometry::<f64>::for_class(&StructureClass::skew_symmetric(4));
        assert_eq!(g.node_gap(&[0.1, 1.0]), 0.2);
        let g = Geometry::<f64>::for_class(&StructureClass::symmetric(2));
        assert_eq!(g.node_gap(&[0.1, 1.0]), 0.9);
    }
}
