//! Scalar abstraction shared by every numeric routine in the crate.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real number type the pipeline computes in.
///
/// Implemented for `f32` and `f64`. Everything that stores a measured value
/// (cut points, support, confidence, fitness) is parameterised over it.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` constant, panicking only for types that cannot hold
    /// ordinary finite literals.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar type cannot represent an f64 literal")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("scalar type cannot represent a count")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Total order over scalars with NaN treated as equal to everything.
pub(crate) fn cmp<T: Scalar>(a: T, b: T) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}
