use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numkernel::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    Symmetric,
    Hermitian,
    SkewSymmetric,
    SkewHermitian,
    Orthogonal,
    Unitary,
    RectReal,
    RectComplex,
}

impl StructureKind {
    pub const ALL: [StructureKind; 8] = [
        StructureKind::Symmetric,
        StructureKind::Hermitian,
        StructureKind::SkewSymmetric,
        StructureKind::SkewHermitian,
        StructureKind::Orthogonal,
        StructureKind::Unitary,
        StructureKind::RectReal,
        StructureKind::RectComplex,
    ];

    pub fn field(self) -> Field {
        match self {
            StructureKind::Symmetric
            | StructureKind::SkewSymmetric
            | StructureKind::Orthogonal
            | StructureKind::RectReal => Field::Real,
            _ => Field::Complex,
        }
    }

    /// Self-adjoint or skew-adjoint kinds; the only ones that take a bandwidth.
    pub fn is_adjoint_type(self) -> bool {
        matches!(
            self,
            StructureKind::Symmetric
                | StructureKind::Hermitian
                | StructureKind::SkewSymmetric
                | StructureKind::SkewHermitian
        )
    }

    pub fn is_group(self) -> bool {
        matches!(self, StructureKind::Orthogonal | StructureKind::Unitary)
    }

    pub fn is_rectangular(self) -> bool {
        matches!(self, StructureKind::RectReal | StructureKind::RectComplex)
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Symmetric => "symmetric",
            StructureKind::Hermitian => "hermitian",
            StructureKind::SkewSymmetric => "skew-symmetric",
            StructureKind::SkewHermitian => "skew-hermitian",
            StructureKind::Orthogonal => "orthogonal",
            StructureKind::Unitary => "unitary",
            StructureKind::RectReal => "rect-real",
            StructureKind::RectComplex => "rect-complex",
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StructureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown structure '{s}'")))
    }
}

/// Determinant sign of a real orthogonal matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DetSign {
    Plus,
    Minus,
}

impl DetSign {
    pub fn from_i32(d: i32) -> Result<Self> {
        match d {
            1 => Ok(DetSign::Plus),
            -1 => Ok(DetSign::Minus),
            _ => Err(invalid(format!("determinant sign must be 1 or -1, got {d}"))),
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            DetSign::Plus => 1,
            DetSign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.as_i32() as f64
    }
}

/// Where a multiple eigenvalue (or singular value) sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CollisionClass {
    #[serde(rename = "generic")]
    PairGeneric,
    #[serde(rename = "zero")]
    AtZero,
    #[serde(rename = "plus-one")]
    AtPlusOne,
    #[serde(rename = "minus-one")]
    AtMinusOne,
}

impl CollisionClass {
    pub const ALL: [CollisionClass; 4] =
        [CollisionClass::PairGeneric, CollisionClass::AtZero, CollisionClass::AtPlusOne, CollisionClass::AtMinusOne];

    pub fn name(self) -> &'static str {
        match self {
            CollisionClass::PairGeneric => "generic",
            CollisionClass::AtZero => "zero",
            CollisionClass::AtPlusOne => "plus-one",
            CollisionClass::AtMinusOne => "minus-one",
        }
    }
}

impl fmt::Display for CollisionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CollisionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CollisionClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid(format!("unknown collision class '{s}'")))
    }
}

/// A manifold of structured matrices.
///
/// `rows == cols == n` except for the rectangular kinds, which have
/// `rows = m >= cols = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureClass {
    kind: StructureKind,
    rows: usize,
    cols: usize,
    bandwidth: Option<usize>,
    det_sign: Option<DetSign>,
}

impl StructureClass {
    /// Square dense class. Orthogonal defaults to determinant +1.
    pub fn new(kind: StructureKind, n: usize) -> Result<Self> {
        if kind.is_rectangular() {
            return Self::rect(kind, n, n);
        }
        let det_sign = (kind == StructureKind::Orthogonal).then_some(DetSign::Plus);
        Self { kind, rows: n, cols: n, bandwidth: None, det_sign }.checked()
    }

    pub fn symmetric(n: usize) -> Self {
        Self::new(StructureKind::Symmetric, n).expect("valid size")
    }

    pub fn hermitian(n: usize) -> Self {
        Self::new(StructureKind::Hermitian, n).expect("valid size")
    }

    pub fn skew_symmetric(n: usize) -> Self {
        Self::new(StructureKind::SkewSymmetric, n).expect("valid size")
    }

    pub fn skew_hermitian(n: usize) -> Self {
        Self::new(StructureKind::SkewHermitian, n).expect("valid size")
    }

    pub fn unitary(n: usize) -> Self {
        Self::new(StructureKind::Unitary, n).expect("valid size")
    }

    pub fn orthogonal(n: usize, det: DetSign) -> Self {
        Self { kind: StructureKind::Orthogonal, rows: n, cols: n, bandwidth: None, det_sign: Some(det) }
            .checked()
            .expect("valid size")
    }

    pub fn rect(kind: StructureKind, m: usize, n: usize) -> Result<Self> {
        if !kind.is_rectangular() {
            return Err(invalid(format!("{kind} is not a rectangular kind")));
        }
        Self { kind, rows: m, cols: n, bandwidth: None, det_sign: None }.checked()
    }

    pub fn with_bandwidth(mut self, k: usize) -> Result<Self> {
        self.bandwidth = Some(k);
        self.checked()
    }

    pub fn with_det_sign(mut self, det: DetSign) -> Result<Self> {
        self.det_sign = Some(det);
        self.checked()
    }

    fn checked(self) -> Result<Self> {
        if self.cols == 0 || self.rows == 0 {
            return Err(invalid("matrix size must be positive"));
        }
        if self.kind.is_rectangular() {
            if self.rows < self.cols {
                return Err(invalid(format!("rectangular classes need m >= n, got {}x{}", self.rows, self.cols)));
            }
        } else if self.rows != self.cols {
            return Err(invalid("square class with unequal dimensions"));
        }
        if let Some(k) = self.bandwidth {
            if !self.kind.is_adjoint_type() {
                return Err(invalid(format!("bandwidth is not defined for {}", self.kind)));
            }
            if k + 1 > self.cols {
                return Err(invalid(format!("bandwidth {k} exceeds n - 1 = {}", self.cols - 1)));
            }
            if k == 0 && self.kind == StructureKind::SkewSymmetric {
                return Err(invalid("skew-symmetric bandwidth 0 contains only the zero matrix"));
            }
        }
        if self.det_sign.is_some() != (self.kind == StructureKind::Orthogonal) {
            return Err(invalid("determinant sign is set exactly for orthogonal classes"));
        }
        Ok(self)
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    /// Number of columns (the size for square kinds).
    pub fn n(&self) -> usize {
        self.cols
    }

    /// Number of rows.
    pub fn m(&self) -> usize {
        self.rows
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn bandwidth(&self) -> Option<usize> {
        self.bandwidth
    }

    /// Bandwidth with "absent" read as full, `n - 1`.
    pub fn effective_bandwidth(&self) -> usize {
        self.bandwidth.unwrap_or(self.cols - 1)
    }

    pub fn is_diagonal(&self) -> bool {
        self.bandwidth == Some(0)
    }

    pub fn det_sign(&self) -> Option<DetSign> {
        self.det_sign
    }

    pub fn field(&self) -> Field {
        self.kind.field()
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.is_rectangular() {
            write!(f, "{} {}x{}", self.kind, self.rows, self.cols)?;
        } else {
            write!(f, "{} n={}", self.kind, self.cols)?;
        }
        if let Some(k) = self.bandwidth {
            write!(f, " bandwidth={k}")?;
        }
        if let Some(d) = self.det_sign {
            write!(f, " det={}", d.as_i32())?;
        }
        Ok(())
    }
}
