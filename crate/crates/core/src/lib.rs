//! Exact discrete convex analysis on `ℤⁿ`.
//!
//! The crate decides integral convexity (and the L♮, M♮, submodular and
//! separable special cases) exactly, applies the scaling operation, tests
//! proximity between α-local and global minimizers, and minimizes integrally
//! convex functions by proximity scaling with a steepest-descent inner loop.
//!
//! All function values are exact rationals extended by `+∞`; nothing in the
//! crate uses floating point. The core numeric pieces ([`ExtValue`] and the
//! simplex kernel in [`lp`]) are generic over an exact ordered field
//! ([`Scalar`]); the rest of the crate is fixed to [`Rational`].

#![allow(clippy::needless_range_loop)]

pub mod checkers;
pub mod cones;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod linalg;
pub mod lp;
pub mod minimize;
pub mod oracle;
pub mod point;
pub mod proximity;
pub mod scalar;
pub mod scaling;
pub mod value;

pub use error::{Error, Result};
pub use oracle::{
    apply_transform, evaluate, table_from_points, table_in_box, FnOracle, OracleKind, Transform,
};
pub use point::{IntBox, IntPoint, RationalPoint};
pub use scalar::Scalar;
pub use value::ExtValue;

/// Arbitrary-precision rational, the scalar used for all function values.
pub type Rational = num_rational::BigRational;

/// `ℚ ∪ {+∞}`.
pub type Value = ExtValue<Rational>;

/// Machine-word rational; exact while numbers stay small.
pub type Rational64 = num_rational::Rational64;

/// `Ratio<i64>` extended by `+∞`.
pub type Value64 = ExtValue<Rational64>;
