//! Exact recognition of integrally convex sets and functions and of the
//! related L♮, M♮ and submodular classes.
//!
//! Every check enumerates candidate violations in a fixed lexicographic order
//! and reports the first one, so reports are identical whether or not the
//! scan runs in parallel. All inequalities are recorded as `lhs ≤ rhs`; a
//! witness is an instance with `lhs > rhs`.

mod functions;
mod quadratic;
mod set;

pub use functions::{check_integrally_convex_fn, check_lnat, check_mnat, check_submodular};
pub use quadratic::{quadratic_oracle, QuadraticOracle, QuadraticSpec};
pub use set::check_integrally_convex_set;

use serde::Serialize;

use crate::point::{IntPoint, RationalPoint};
use crate::Value;

/// The property a [`CheckReport`] is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    IntegrallyConvexSet,
    IntegrallyConvex,
    Lnat,
    Mnat,
    Submodular,
    AlphaLocalMin,
    BoxBarrier,
    HyperplaneBarrier,
    HilbertBasis,
}

/// A concrete violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A pair inequality between `x < y`: midpoint convexity, discrete
    /// midpoint convexity or submodularity.
    Pair {
        x: IntPoint,
        y: IntPoint,
        lhs: Value,
        rhs: Value,
    },
    /// The exchange at coordinate `i` (0-based) fails for every admissible
    /// `j`; `lhs` is the best exchanged value, `rhs = f(x) + f(y)`.
    Exchange {
        x: IntPoint,
        y: IntPoint,
        i: usize,
        lhs: Value,
        rhs: Value,
    },
    /// A vertex of `conv(S) ∩ [cell, cell + 1]` outside `conv(S ∩ cell)`.
    Cell {
        cell: IntPoint,
        point: RationalPoint,
    },
    /// `f(x) ≤ f(x + alpha·d)` fails.
    Direction {
        x: IntPoint,
        d: IntPoint,
        alpha: i64,
        lhs: Value,
        rhs: Value,
    },
    /// A point `z` beating the reference value: `lhs = f(reference)`,
    /// `rhs = f(z)`.
    Point { z: IntPoint, lhs: Value, rhs: Value },
    /// An integer point of the real cone missing from the integer cone.
    Lattice { z: IntPoint },
}

impl Witness {
    /// The violated inequality `(lhs, rhs)` where one applies.
    pub fn sides(&self) -> Option<(&Value, &Value)> {
        match self {
            Witness::Pair { lhs, rhs, .. }
            | Witness::Exchange { lhs, rhs, .. }
            | Witness::Direction { lhs, rhs, .. }
            | Witness::Point { lhs, rhs, .. } => Some((lhs, rhs)),
            Witness::Cell { .. } | Witness::Lattice { .. } => None,
        }
    }

    /// The two points of a pair-type witness.
    pub fn pair(&self) -> Option<(&IntPoint, &IntPoint)> {
        match self {
            Witness::Pair { x, y, .. } | Witness::Exchange { x, y, .. } => Some((x, y)),
            _ => None,
        }
    }
}

/// Verdict of a check, with the first violation when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub class: ClassTag,
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(class: ClassTag) -> Self {
        CheckReport {
            class,
            verdict: true,
            witness: None,
        }
    }

    pub fn fail(class: ClassTag, witness: Witness) -> Self {
        CheckReport {
            class,
            verdict: false,
            witness: Some(witness),
        }
    }

    pub(crate) fn from_witness(class: ClassTag, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Self::fail(class, w),
            None => Self::pass(class),
        }
    }

    pub(crate) fn relabel(mut self, class: ClassTag) -> Self {
        self.class = class;
        self
    }
}
