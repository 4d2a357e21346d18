use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Real floating-point type the numerical kernels are written against.
///
/// Tolerances throughout the crate are written for `f64` and converted with
/// [`Scalar::tol`], which keeps their size in units of machine epsilon.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// One standard normal draw.
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One uniform draw on the open interval (0, 1).
    fn uniform_open<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts an `f64` tolerance, preserving its size relative to epsilon.
    #[inline]
    fn tol(x: f64) -> Self {
        let ratio = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
        Self::lit(x * ratio)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    fn uniform_open<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let u: f64 = rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }
}

impl Scalar for f32 {
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    fn uniform_open<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let u: f32 = rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }
}
