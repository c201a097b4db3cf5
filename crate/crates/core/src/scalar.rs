//! Scalar abstraction so the numeric core works over `f32` or `f64`.

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar used throughout the solver.
///
/// Implemented for `f32` and `f64`. Counting logic stays in integers
/// regardless of the scalar; this trait only carries cost values,
/// probabilities, and dual parameters.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Absolute tolerance under which two objective values count as tied.
    fn tie_tol() -> Self;
}

impl Scalar for f32 {
    fn tie_tol() -> Self {
        1e-5
    }
}

impl Scalar for f64 {
    fn tie_tol() -> Self {
        1e-12
    }
}

/// Cast an `f64` constant into the working scalar.
#[inline]
pub(crate) fn cast<S: Scalar>(v: f64) -> S {
    S::from(v).expect("constant representable in scalar type")
}
