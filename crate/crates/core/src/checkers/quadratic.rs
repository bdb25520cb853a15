//! Quadratic functions `xᵀQx + pᵀx` on a box, with the diagonal dominance
//! criteria for integral convexity and L♮-convexity.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::oracle::FnOracle;
use crate::point::IntBox;
use crate::{Rational, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpec {
    pub q: Vec<Vec<Rational>>,
    pub p: Vec<Rational>,
    pub bbox: IntBox,
}

#[derive(Clone, Debug)]
pub struct QuadraticOracle {
    pub oracle: FnOracle,
    /// `q_ii ≥ Σ_{j≠i} |q_ij|` for every `i`.
    pub diag_dominant: bool,
    /// Diagonally dominant with `q_ij ≤ 0` off the diagonal.
    pub lnat_pattern: bool,
}

/// Builds the oracle and its classification flags.
pub fn quadratic_oracle(spec: &QuadraticSpec) -> Result<QuadraticOracle> {
    let n = spec.bbox.dim();
    if spec.q.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: spec.q.len(),
        });
    }
    if spec.p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: spec.p.len(),
        });
    }
    for row in &spec.q {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    for i in 0..n {
        for j in 0..i {
            if spec.q[i][j] != spec.q[j][i] {
                return Err(Error::InvalidArgument(format!(
                    "Q is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    let diag_dominant = (0..n).all(|i| {
        let off: Rational = (0..n).filter(|&j| j != i).map(|j| spec.q[i][j].abs()).sum();
        spec.q[i][i] >= off
    });
    let nonpositive = (0..n).all(|i| (0..n).all(|j| i == j || !spec.q[i][j].is_positive()));

    let q = spec.q.clone();
    let p = spec.p.clone();
    let oracle = FnOracle::from_fn(spec.bbox.clone(), move |x| {
        let xs: Vec<Rational> = x
            .coords()
            .iter()
            .map(|&v| Rational::from_integer(BigInt::from(v)))
            .collect();
        let mut total = Rational::zero();
        for i in 0..xs.len() {
            let row: Rational = (0..xs.len()).map(|j| &q[i][j] * &xs[j]).sum();
            total += &xs[i] * row + &p[i] * &xs[i];
        }
        Value::Finite(total)
    });
    Ok(QuadraticOracle {
        oracle,
        diag_dominant,
        lnat_pattern: diag_dominant && nonpositive,
    })
}
