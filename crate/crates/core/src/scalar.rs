//! Scalar abstraction: the numeric core is generic over the floating type.

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};
use std::fmt::{Debug, Display};

/// Floating scalar the geometric and variational code is generic over
/// (`f32` or `f64`; the CLI and reports use `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumCast + Debug + Display + Send + Sync + 'static
{
}

/// Shorthand for converting an `f64` constant into the working scalar.
#[inline]
pub(crate) fn r<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("f64 constant representable in scalar type")
}

/// `usize` into the working scalar.
#[inline]
pub(crate) fn ru<F: Real>(n: usize) -> F {
    F::from_usize(n).expect("usize representable in scalar type")
}
