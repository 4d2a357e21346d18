use serde::{Deserialize, Serialize};

use super::class::{CollisionClass, DetSign, StructureClass, StructureKind};
use super::spectrum::forced_unit_eigenvalues;

/// Real dimension of the manifold `class`.
///
/// Banded classes use the band counts; with no bandwidth the full count
/// (`k = n - 1`) applies, which reduces to the dense formulas.
pub fn ambient_dimension(class: &StructureClass) -> usize {
    let n = class.n();
    let k = class.effective_bandwidth();
    match class.kind() {
        StructureKind::Symmetric => (k + 1) * (2 * n - k) / 2,
        StructureKind::Hermitian | StructureKind::SkewHermitian => n * (2 * k + 1) - k * (k + 1),
        StructureKind::SkewSymmetric => k * (2 * n - 1 - k) / 2,
        StructureKind::Orthogonal => n * (n - 1) / 2,
        StructureKind::Unitary => n * n,
        StructureKind::RectReal => class.m() * n,
        StructureKind::RectComplex => 2 * class.m() * n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Codimension {
    Value(u32),
    /// The collision cannot occur in this class.
    Impossible,
}

impl Codimension {
    pub fn value(self) -> Option<u32> {
        match self {
            Codimension::Value(v) => Some(v),
            Codimension::Impossible => None,
        }
    }
}

/// Real codimension of the members of `class` with a multiple eigenvalue (or
/// singular value) at the given location.
pub fn expected_codimension(class: &StructureClass, collision: CollisionClass) -> Codimension {
    use Codimension::{Impossible, Value};
    use CollisionClass::*;
    let n = class.n();
    match class.kind() {
        kind @ (StructureKind::Symmetric | StructureKind::Hermitian | StructureKind::SkewHermitian) => {
            match collision {
                PairGeneric if n >= 2 => {
                    if class.is_diagonal() {
                        Value(1)
                    } else if kind == StructureKind::Symmetric {
                        Value(2)
                    } else {
                        Value(3)
                    }
                }
                _ => Impossible,
            }
        }
        StructureKind::SkewSymmetric => {
            let pairs = n / 2;
            match collision {
                AtZero if pairs >= 1 => Value(if n.is_multiple_of(2) { 1 } else { 3 }),
                PairGeneric if pairs >= 2 => Value(3),
                _ => Impossible,
            }
        }
        StructureKind::Orthogonal => {
            let det = class.det_sign().unwrap_or(DetSign::Plus);
            let (plus, minus) = forced_unit_eigenvalues(n, det);
            let pairs = (n - plus - minus) / 2;
            match collision {
                AtPlusOne if pairs >= 1 => Value(if plus == 1 { 3 } else { 1 }),
                AtMinusOne if pairs >= 1 => Value(if minus == 1 { 3 } else { 1 }),
                PairGeneric if pairs >= 2 => Value(3),
                _ => Impossible,
            }
        }
        StructureKind::Unitary => match collision {
            PairGeneric if n >= 2 => Value(3),
            _ => Impossible,
        },
        StructureKind::RectReal => match collision {
            PairGeneric if n >= 2 => Value(2),
            _ => Impossible,
        },
        StructureKind::RectComplex => match collision {
            PairGeneric if n >= 2 => Value(3),
            _ => Impossible,
        },
    }
}

/// Collision locations that can occur in `class`.
pub fn compatible_collisions(class: &StructureClass) -> Vec<CollisionClass> {
    CollisionClass::ALL.into_iter().filter(|&c| expected_codimension(class, c) != Codimension::Impossible).collect()
}

/// Codimension of all derogatory members of `class`: the smallest codimension
/// over the possible collision locations.
pub fn class_codimension(class: &StructureClass) -> Option<u32> {
    compatible_collisions(class).into_iter().filter_map(|c| expected_codimension(class, c).value()).min()
}

/// One line of the dimension/codimension summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub structure: String,
    pub class: StructureClass,
    pub ambient_formula: String,
    pub ambient_dimension: usize,
    pub codimension: u32,
    pub note: Option<String>,
}

/// Summary of ambient dimensions and codimensions, each row evaluated at a
/// representative size.
pub fn codimension_table() -> Vec<TableRow> {
    let skew_note = "listed elsewhere as n(n+1)/2; the direct count of free entries is n(n-1)/2, used here";
    let banded = |kind: StructureKind, n: usize, k: usize| {
        StructureClass::new(kind, n).and_then(|c| c.with_bandwidth(k)).expect("valid banded class")
    };
    let rows: Vec<(&str, StructureClass, &str, Option<&str>)> = vec![
        ("symmetric", StructureClass::symmetric(7), "n(n+1)/2", None),
        ("hermitian", StructureClass::hermitian(7), "n^2", None),
        ("skew-symmetric, n even", StructureClass::skew_symmetric(6), "n(n-1)/2", Some(skew_note)),
        ("skew-symmetric, n odd", StructureClass::skew_symmetric(7), "n(n-1)/2", Some(skew_note)),
        ("skew-hermitian", StructureClass::skew_hermitian(6), "n^2", None),
        ("orthogonal, n even, det 1", StructureClass::orthogonal(6, DetSign::Plus), "n(n-1)/2", None),
        ("orthogonal, n even, det -1", StructureClass::orthogonal(6, DetSign::Minus), "n(n-1)/2", None),
        ("orthogonal, n odd", StructureClass::orthogonal(5, DetSign::Plus), "n(n-1)/2", None),
        ("unitary", StructureClass::unitary(6), "n^2", None),
        ("banded symmetric, k=1", banded(StructureKind::Symmetric, 7, 1), "(k+1)(2n-k)/2", None),
        ("banded hermitian, k=1", banded(StructureKind::Hermitian, 7, 1), "n(2k+1)-k(k+1)", None),
        ("banded skew-symmetric, k=1, n even", banded(StructureKind::SkewSymmetric, 6, 1), "k(2n-1-k)/2", None),
        ("banded skew-symmetric, k=1, n odd", banded(StructureKind::SkewSymmetric, 7, 1), "k(2n-1-k)/2", None),
        ("banded skew-hermitian, k=1", banded(StructureKind::SkewHermitian, 7, 1), "n(2k+1)-k(k+1)", None),
        ("diagonal", banded(StructureKind::Symmetric, 6, 0), "n", None),
        (
            "singular values, real m x n",
            StructureClass::rect(StructureKind::RectReal, 5, 4).expect("valid"),
            "mn",
            None,
        ),
        (
            "singular values, complex m x n",
            StructureClass::rect(StructureKind::RectComplex, 5, 4).expect("valid"),
            "2mn",
            None,
        ),
    ];
    rows.into_iter()
        .map(|(label, class, formula, note)| TableRow {
            structure: label.to_string(),
            class,
            ambient_formula: formula.to_string(),
            ambient_dimension: ambient_dimension(&class),
            codimension: class_codimension(&class).expect("every tabulated class admits a collision"),
            note: note.map(str::to_string),
        })
        .collect()
}
