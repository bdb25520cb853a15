//! Proximity-scaling minimization with a steepest-descent inner loop, and
//! the brute-force reference minimizer.
//!
//! Ties are broken by [`LexOrder`]: values first, then points
//! lexicographically. This is the order of `f(x) + Σ εⁱ xᵢ` for small
//! `ε > 0`, so every minimizer reported here is the lexicographically
//! smallest global minimizer.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::FnOracle;
use crate::point::{unit_directions, IntBox, IntPoint};
use crate::proximity::beta;
use crate::value::{floor_i64, int};
use crate::{Rational, Value};

/// Orders `(value, point)` pairs by value, then by point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LexOrder;

impl LexOrder {
    pub fn compare(&self, a: (&Value, &IntPoint), b: (&Value, &IntPoint)) -> Ordering {
        a.0.cmp(b.0).then_with(|| a.1.cmp(b.1))
    }
}

/// `max_i (max x_i − min x_i)` over `dom f`.
pub fn k_infinity(f: &FnOracle) -> Result<i64> {
    let dom = f.nonempty_domain()?;
    Ok((0..f.dim())
        .map(|i| {
            let (lo, hi) = dom.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| {
                (lo.min(p[i]), hi.max(p[i]))
            });
            hi - lo
        })
        .max()
        .unwrap_or(0))
}

/// The LexOrder-minimal `(point, value)` over `dom f`.
pub fn brute_force_min(f: &FnOracle) -> Result<(IntPoint, Value)> {
    let order = LexOrder;
    f.finite_entries()
        .into_iter()
        .map(|(p, v)| (p, Value::Finite(v)))
        .min_by(|a, b| order.compare((&a.1, &a.0), (&b.1, &b.0)))
        .ok_or(Error::EmptyDomain)
}

/// Result of one steepest-descent run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub point: IntPoint,
    pub iterations: u64,
}

/// Steepest descent under [`LexOrder`]: moves to the best of `y + d`,
/// `d ∈ {−1,0,+1}ⁿ`, until `y` itself is best. The result satisfies
/// `g(y) ≤ g(y + d)` for every `d`.
pub fn steepest_descent_local(g: &FnOracle, y0: &IntPoint) -> Result<Descent> {
    y0.check_dim(g.dim())?;
    let guard = g.bbox().len().min(u64::MAX as u128) as u64;
    descend(|y| g.value(y), y0, guard)
}

fn descend<F: FnMut(&IntPoint) -> Value>(mut g: F, y0: &IntPoint, guard: u64) -> Result<Descent> {
    let order = LexOrder;
    let mut y = y0.clone();
    let mut gy = g(&y);
    if !gy.is_finite() {
        return Err(Error::Precondition(format!(
            "descent start {y0} has infinite value"
        )));
    }
    let dirs = unit_directions(y.dim());
    let mut iterations = 0u64;
    loop {
        let mut best = (gy.clone(), y.clone());
        for d in &dirs {
            let z = y.offset(d, 1);
            let gz = g(&z);
            if order.compare((&gz, &z), (&best.0, &best.1)) == Ordering::Less {
                best = (gz, z);
            }
        }
        if best.1 == y {
            return Ok(Descent {
                point: y,
                iterations,
            });
        }
        iterations += 1;
        if iterations > guard {
            return Err(Error::IterationGuard { guard });
        }
        (gy, y) = best;
    }
}

/// One scaling phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phase {
    pub alpha: i64,
    /// `x` when the phase starts.
    pub start: IntPoint,
    /// The local minimizer of `f̂`; the phase ends at `start + alpha·y`.
    pub y: IntPoint,
    pub iterations: u64,
    /// Distinct points of `f` evaluated in this phase.
    pub evaluations: u64,
}

impl Phase {
    pub fn end(&self) -> IntPoint {
        self.start.offset(self.y.coords(), self.alpha)
    }

    /// Half-width of the phase window, `⌊β_n(2α − 1)⌋`.
    pub fn radius(&self, n: usize) -> i64 {
        window_radius(n, self.alpha)
    }

    /// The box `{x : ‖x − start‖∞ ≤ β_n(2α−1)}` clipped to `bbox`, on which
    /// `start + alpha·y` is α-local minimal.
    pub fn window(&self, bbox: &IntBox) -> Option<IntBox> {
        let r = self.radius(bbox.dim());
        let lo = self.start.offset(&vec![-1; bbox.dim()], r);
        let hi = self.start.offset(&vec![1; bbox.dim()], r);
        IntBox::new(lo, hi).ok()?.intersect(bbox)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizeResult {
    pub minimizer: IntPoint,
    pub value: Value,
    pub k_infinity: i64,
    /// Distinct evaluations summed over the phases.
    pub evaluations: u64,
    /// `(12 β_n)ⁿ · max(1, ⌈log₂ K∞⌉)`, rounded up to an integer.
    #[serde(serialize_with = "serialize_bigint")]
    pub budget: BigInt,
    pub phases: Vec<Phase>,
}

fn serialize_bigint<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `⌈log₂ k⌉` for `k ≥ 1`.
pub fn ceil_log2(k: i64) -> u32 {
    assert!(k >= 1, "ceil_log2 needs k ≥ 1");
    64 - ((k - 1) as u64).leading_zeros()
}

fn window_radius(n: usize, alpha: i64) -> i64 {
    floor_i64(&(beta(n).expect("n ≥ 1") * int(2 * alpha - 1)))
}

/// `(12 β_n)ⁿ · max(1, ⌈log₂ K∞⌉)`, rounded up.
pub fn evaluation_budget(n: usize, k_inf: i64) -> BigInt {
    let base: Rational = (int(12) * beta(n).expect("n ≥ 1")).pow(n as i32);
    let phases = int(ceil_log2(k_inf.max(1)).max(1) as i64);
    (base * phases).ceil().to_integer()
}

/// `(4 β_n)ⁿ`, the bound on descent steps within one phase.
pub fn iteration_guard(n: usize) -> u64 {
    let g: Rational = (int(4) * beta(n).expect("n ≥ 1")).pow(n as i32);
    g.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Minimizes `f` by proximity scaling.
///
/// Starts from the lexicographically smallest point of `dom f` with
/// `α = 2^⌈log₂ K∞⌉`; each phase runs steepest descent on
/// `f̂(y) = f(x + αy)` over `‖αy‖∞ ≤ β_n(2α − 1)`, moves `x` and halves `α`.
/// The input is assumed integrally convex; descent running past the
/// per-phase guard is reported as [`Error::IterationGuard`].
pub fn minimize_proximity_scaling(f: &FnOracle) -> Result<MinimizeResult> {
    let n = f.dim();
    let dom = f.nonempty_domain()?;
    let k_inf = k_infinity(f)?;
    let budget = evaluation_budget(n, k_inf);
    let mut x = dom[0].clone();
    if k_inf == 0 {
        let value = f.value(&x);
        return Ok(MinimizeResult {
            minimizer: x,
            value,
            k_infinity: 0,
            evaluations: 0,
            budget,
            phases: vec![],
        });
    }
    let guard = iteration_guard(n);
    let mut alpha = 1i64 << ceil_log2(k_inf);
    let mut phases = Vec::new();
    let mut evaluations = 0u64;
    loop {
        let reach = window_radius(n, alpha);
        let mut memo: HashMap<IntPoint, Value> = HashMap::new();
        let start = x.clone();
        let f_hat = |y: &IntPoint| -> Value {
            if y.coords()
                .iter()
                .any(|&v| v.abs().saturating_mul(alpha) > reach)
            {
                return Value::PosInfinity;
            }
            let z = start.offset(y.coords(), alpha);
            if !f.bbox().contains(&z) {
                return Value::PosInfinity;
            }
            memo.entry(z).or_insert_with_key(|z| f.value(z)).clone()
        };
        let descent = descend(f_hat, &IntPoint::zeros(n), guard)?;
        evaluations += memo.len() as u64;
        let phase = Phase {
            alpha,
            start: start.clone(),
            y: descent.point,
            iterations: descent.iterations,
            evaluations: memo.len() as u64,
        };
        x = phase.end();
        phases.push(phase);
        if alpha == 1 {
            break;
        }
        alpha /= 2;
    }
    let value = f.value(&x);
    Ok(MinimizeResult {
        minimizer: x,
        value,
        k_infinity: k_inf,
        evaluations,
        budget,
        phases,
    })
}
