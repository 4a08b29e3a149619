//! Scalar abstraction for score computations.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the ranking math runs on: `f32` or `f64`.
///
/// Everything downstream of the integer mention counts (factor scores,
/// transition weights, walk vectors, rank metrics) is generic over this
/// trait. The acceptance tolerances assume `f64`; `f32` works but loses
/// precision accordingly.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + AddAssign + Sum<Self> + Debug + Display + Send + Sync + 'static
{
    /// Converts a set cardinality or mention count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar")
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + Sum<T>
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
