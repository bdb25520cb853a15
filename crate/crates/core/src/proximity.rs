//! Proximity between α-local and global minimizers: the coefficients `β_n`,
//! class-specific direction sets and bounds, barrier properties, `ICH` for
//! `n = 2`, and f-minimality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use crate::checkers::{CheckReport, ClassTag, Witness};
use crate::error::{Error, Result};
use crate::oracle::FnOracle;
use crate::point::{unit_directions, IntBox, IntPoint};
use crate::value::{floor_i64, int};
use crate::Rational;

type DirectionFilter = Box<dyn Fn(&Vec<i64>) -> bool>;

/// `β_n`: `β₁ = 1`, `β₂ = 2`, `β_n = ((n+1)/2)·β_{n−1} + 1`.
pub fn beta(n: usize) -> Result<Rational> {
    match n {
        0 => Err(Error::InvalidArgument("beta needs n ≥ 1".into())),
        1 => Ok(int(1)),
        _ => {
            let mut b = int(2);
            for k in 3..=n {
                b = Rational::new(BigInt::from(k + 1), BigInt::from(2)) * b + int(1);
            }
            Ok(b)
        }
    }
}

/// `(n+1)! / 2^{n−1}`, an upper bound on `β_n` for `n ≥ 3`.
pub fn beta_upper_bound(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "the factorial bound needs n ≥ 3".into(),
        ));
    }
    let fact: BigInt = (2..=n + 1).map(BigInt::from).product();
    Ok(Rational::new(fact, BigInt::from(2).pow(n - 1)))
}

/// Function classes with their own proximity theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionClass {
    Separable,
    Lnat,
    Mnat,
    IntegrallyConvex,
    /// Integrally convex in dimension 2.
    IcN2,
}

impl FromStr for FunctionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "separable" => Ok(FunctionClass::Separable),
            "lnat" => Ok(FunctionClass::Lnat),
            "mnat" => Ok(FunctionClass::Mnat),
            "icx" | "integrally_convex" => Ok(FunctionClass::IntegrallyConvex),
            "icx2" | "ic_n2" => Ok(FunctionClass::IcN2),
            _ => Err(Error::Parse(format!("unknown function class {s:?}"))),
        }
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionClass::Separable => "separable",
            FunctionClass::Lnat => "lnat",
            FunctionClass::Mnat => "mnat",
            FunctionClass::IntegrallyConvex => "icx",
            FunctionClass::IcN2 => "icx2",
        })
    }
}

/// A class together with its α-local direction set and proximity bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProximitySpec {
    pub class: FunctionClass,
}

impl ProximitySpec {
    pub fn new(class: FunctionClass) -> Self {
        ProximitySpec { class }
    }

    pub fn integrally_convex() -> Self {
        Self::new(FunctionClass::IntegrallyConvex)
    }

    /// Nonzero directions `d` of the α-local test, lexicographically sorted.
    pub fn directions(&self, n: usize) -> Vec<IntPoint> {
        let all = unit_directions(n)
            .into_iter()
            .filter(|d| d.iter().any(|&v| v != 0));
        let keep: DirectionFilter = match self.class {
            FunctionClass::Separable => Box::new(|d| d.iter().filter(|&&v| v != 0).count() == 1),
            FunctionClass::Lnat => {
                Box::new(|d| d.iter().all(|&v| v >= 0) || d.iter().all(|&v| v <= 0))
            }
            FunctionClass::Mnat => Box::new(|d| {
                let pos = d.iter().filter(|&&v| v == 1).count();
                let neg = d.iter().filter(|&&v| v == -1).count();
                pos + neg == 1 || (pos == 1 && neg == 1)
            }),
            FunctionClass::IntegrallyConvex | FunctionClass::IcN2 => Box::new(|_| true),
        };
        all.filter(|d| keep(d)).map(IntPoint).collect()
    }

    /// The factor in front of `α − 1` in the proximity bound.
    pub fn multiplier(&self, n: usize) -> Result<Rational> {
        match self.class {
            FunctionClass::Separable => Ok(int(1)),
            FunctionClass::Lnat | FunctionClass::Mnat => Ok(int(n as i64)),
            FunctionClass::IcN2 => {
                if n != 2 {
                    return Err(Error::InvalidArgument(format!(
                        "the n = 2 bound was requested for n = {n}"
                    )));
                }
                Ok(int(2))
            }
            FunctionClass::IntegrallyConvex => beta(n),
        }
    }

    /// `multiplier · (α − 1)`.
    pub fn bound(&self, n: usize, alpha: i64) -> Result<Rational> {
        Ok(self.multiplier(n)? * int(alpha - 1))
    }
}

fn require_in_dom(f: &FnOracle, x: &IntPoint) -> Result<()> {
    x.check_dim(f.dim())?;
    if !f.value(x).is_finite() {
        return Err(Error::Precondition(format!("{x} is not in dom f")));
    }
    Ok(())
}

/// `f(x) ≤ f(x + αd)` for every direction `d` of `spec`; the witness is the
/// first failing direction.
pub fn is_alpha_local_min(
    f: &FnOracle,
    x: &IntPoint,
    alpha: i64,
    spec: &ProximitySpec,
) -> Result<CheckReport> {
    require_in_dom(f, x)?;
    if alpha < 1 {
        return Err(Error::BadScale(alpha));
    }
    let fx = f.value(x);
    let witness = spec.directions(f.dim()).into_iter().find_map(|d| {
        let fy = f.value(&x.offset(d.coords(), alpha));
        (fx > fy).then(|| Witness::Direction {
            x: x.clone(),
            d,
            alpha,
            lhs: fx.clone(),
            rhs: fy,
        })
    });
    Ok(CheckReport::from_witness(ClassTag::AlphaLocalMin, witness))
}

/// Every point of `dom f` that is α-local minimal under `spec`, sorted.
pub fn alpha_local_minimizers(
    f: &FnOracle,
    alpha: i64,
    spec: &ProximitySpec,
) -> Result<Vec<IntPoint>> {
    let dom = f.nonempty_domain()?;
    let dirs = spec.directions(f.dim());
    Ok(dom
        .into_par_iter()
        .filter(|x| {
            let fx = f.value(x);
            dirs.iter()
                .all(|d| fx <= f.value(&x.offset(d.coords(), alpha)))
        })
        .collect())
}

/// The global minimizers of `f`, sorted.
pub fn argmin(f: &FnOracle) -> Result<Vec<IntPoint>> {
    let entries = f.finite_entries();
    let best = entries
        .iter()
        .map(|(_, v)| v)
        .min()
        .ok_or(Error::EmptyDomain)?
        .clone();
    Ok(entries
        .into_iter()
        .filter(|(_, v)| *v == best)
        .map(|(p, _)| p)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProximityOutcome {
    pub holds: bool,
    /// ℓ∞ distance to the nearest global minimizer.
    pub distance: i64,
    /// Nearest global minimizer, lexicographically first among ties.
    pub nearest: IntPoint,
    #[serde(serialize_with = "crate::value::serialize_rational")]
    pub bound: Rational,
    /// `⌊bound⌋`, reported but never asserted.
    pub floored_bound: i64,
}

/// Compares the distance from `x_alpha` to `arg min f` with the bound of
/// `spec`. `x_alpha` must be α-local minimal under `spec`.
pub fn proximity_holds(
    f: &FnOracle,
    x_alpha: &IntPoint,
    alpha: i64,
    spec: &ProximitySpec,
) -> Result<ProximityOutcome> {
    let local = is_alpha_local_min(f, x_alpha, alpha, spec)?;
    if !local.verdict {
        return Err(Error::Precondition(format!(
            "{x_alpha} is not {alpha}-local minimal"
        )));
    }
    let bound = spec.bound(f.dim(), alpha)?;
    let minimizers = argmin(f)?;
    let nearest = minimizers
        .iter()
        .min_by_key(|m| (m.dist_inf(x_alpha), (*m).clone()))
        .expect("nonempty argmin")
        .clone();
    let distance = nearest.dist_inf(x_alpha);
    let floored_bound = floor_i64(&bound);
    Ok(ProximityOutcome {
        holds: int(distance) <= bound,
        distance,
        nearest,
        bound,
        floored_bound,
    })
}

/// Outcome of a barrier check: whether the wall hypothesis and the exterior
/// conclusion hold, each with its first violating point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarrierReport {
    pub hypothesis: CheckReport,
    pub conclusion: CheckReport,
}

impl BarrierReport {
    /// Hypothesis implies conclusion.
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis.verdict || self.conclusion.verdict
    }
}

/// The box-barrier property for the open box `p < x < q` around `x_hat`.
///
/// `None` entries of `p` and `q` stand for `∓∞`; they are clamped to one
/// step beyond the bounding box, where `f` is `+∞`.
pub fn verify_box_barrier(
    f: &FnOracle,
    p: &[Option<i64>],
    q: &[Option<i64>],
    x_hat: &IntPoint,
) -> Result<BarrierReport> {
    barrier(f, p, q, x_hat, ClassTag::BoxBarrier)
}

/// The hyperplane-barrier property: the wall `{y : y_i = q}` and the
/// exterior `{z : z_i ≥ q}`. `i` is 0-based.
pub fn verify_hyperplane_barrier(
    f: &FnOracle,
    x_hat: &IntPoint,
    i: usize,
    q: i64,
) -> Result<BarrierReport> {
    let n = f.dim();
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "coordinate {i} out of range for n = {n}"
        )));
    }
    let mut qs = vec![None; n];
    qs[i] = Some(q);
    barrier(f, &vec![None; n], &qs, x_hat, ClassTag::HyperplaneBarrier)
}

fn barrier(
    f: &FnOracle,
    p: &[Option<i64>],
    q: &[Option<i64>],
    x_hat: &IntPoint,
    class: ClassTag,
) -> Result<BarrierReport> {
    let n = f.dim();
    for v in [p.len(), q.len()] {
        if v != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v,
            });
        }
    }
    require_in_dom(f, x_hat)?;
    let bb = f.bbox();
    let lo: Vec<i64> = (0..n)
        .map(|i| p[i].unwrap_or(bb.lower()[i].min(x_hat[i]) - 1))
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| q[i].unwrap_or(bb.upper()[i].max(x_hat[i]) + 1))
        .collect();
    if (0..n).any(|i| !(lo[i] < x_hat[i] && x_hat[i] < hi[i])) {
        return Err(Error::Precondition(format!(
            "{x_hat} is not strictly inside the box"
        )));
    }

    let fx = f.value(x_hat);
    let in_closed = |y: &IntPoint| (0..n).all(|i| lo[i] <= y[i] && y[i] <= hi[i]);
    let in_open = |y: &IntPoint| (0..n).all(|i| lo[i] < y[i] && y[i] < hi[i]);
    let points: Vec<IntPoint> = bb.points().collect();
    let beats = |z: &IntPoint| {
        let fz = f.value(z);
        (fz < fx).then(|| Witness::Point {
            z: z.clone(),
            lhs: fx.clone(),
            rhs: fz,
        })
    };
    let wall = points
        .par_iter()
        .filter(|y| in_closed(y) && !in_open(y))
        .find_map_first(beats);
    let exterior = points
        .par_iter()
        .filter(|z| !in_open(z))
        .find_map_first(beats);
    Ok(BarrierReport {
        hypothesis: CheckReport::from_witness(class, wall),
        conclusion: CheckReport::from_witness(class, exterior),
    })
}

/// `ICH(x, y)`, the smallest integrally convex subset of `ℤ²` containing
/// `x` and `y`, sorted.
pub fn ich(x: &IntPoint, y: &IntPoint) -> Result<Vec<IntPoint>> {
    if x.dim() != 2 || y.dim() != 2 {
        return Err(Error::InvalidArgument(
            "ICH is defined for n = 2 only".into(),
        ));
    }
    let range = |a: i64, b: i64| (a.min(b), a.max(b));
    let (d_lo, d_hi) = range(x[0] - x[1], y[0] - y[1]);
    let (s_lo, s_hi) = range(x[0] + x[1], y[0] + y[1]);
    let bbox = IntBox::hull([x, y]).expect("two points");
    Ok(bbox
        .points()
        .filter(|z| {
            let (d, s) = (z[0] - z[1], z[0] + z[1]);
            d_lo <= d && d <= d_hi && s_lo <= s && s <= s_hi
        })
        .collect())
}

/// Whether `x ≥ 0` is the unique minimizer of `f` on `[0, x]`.
pub fn is_f_minimal(f: &FnOracle, x: &IntPoint) -> Result<bool> {
    require_in_dom(f, x)?;
    if x.coords().iter().any(|&v| v < 0) {
        return Err(Error::Precondition(format!("{x} is not nonnegative")));
    }
    let fx = f.value(x);
    let interval = IntBox::new(IntPoint::zeros(x.dim()), x.clone())?;
    Ok(interval.points().all(|y| y == *x || f.value(&y) > fx))
}
