//! Exact ordered fields.
//!
//! Everything that decides an inequality in this crate does so with zero
//! tolerance, so the scalar type must be an exact field with a total order.
//! Floating-point types do not satisfy this bound (`f64` is not `Ord`).
//! The crate runs on [`BigRational`](crate::Rational); `Ratio<i64>` and
//! `Ratio<i128>` also qualify and are handy for small kernels and test
//! oracles.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// An exact, totally ordered field.
pub trait Scalar:
    Clone + Ord + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Lifts a machine integer into the field.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every field here contains the integers")
    }
}

impl<T> Scalar for T where
    T: Clone + Ord + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}
