//! Function-level checks: integral convexity via the distance-2 midpoint
//! condition, discrete midpoint convexity (L♮), the exchange property (M♮)
//! and submodularity.

use rayon::prelude::*;

use super::{check_integrally_convex_set, CheckReport, ClassTag, Witness};
use crate::error::Result;
use crate::extension::extension_value;
use crate::oracle::FnOracle;
use crate::point::{IntPoint, RationalPoint};
use crate::value::ratio;
use crate::Value;

fn half(v: Value) -> Value {
    v.scale(&ratio(1, 2)).expect("positive scale")
}

/// Offsets `d` with `‖d‖∞ = 2` and `d > 0` lexicographically, sorted.
fn distance_two_offsets(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-2..=2).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.retain(|d| {
        d.iter().any(|v| v.abs() == 2) && d.iter().find(|v| **v != 0).is_some_and(|v| *v > 0)
    });
    out
}

/// `f̃` at the midpoint of `x` and `y`, with exact shortcuts for up to one
/// fractional coordinate.
fn midpoint_extension(f: &FnOracle, x: &IntPoint, y: &IntPoint) -> Value {
    let odd: Vec<usize> = (0..x.dim()).filter(|&i| (x[i] - y[i]) % 2 != 0).collect();
    match odd.len() {
        0 => {
            let m: Vec<i64> = (0..x.dim()).map(|i| (x[i] + y[i]) / 2).collect();
            f.value(&IntPoint(m))
        }
        1 => {
            let lo: Vec<i64> = (0..x.dim()).map(|i| (x[i] + y[i]).div_euclid(2)).collect();
            let mut hi = lo.clone();
            hi[odd[0]] += 1;
            half(f.value(&IntPoint(lo)) + f.value(&IntPoint(hi)))
        }
        _ => extension_value(f, &RationalPoint::midpoint(x, y)).expect("dimensions agree"),
    }
}

/// Decides integral convexity of `f`.
///
/// `dom f` must pass the set check, and `f̃((x+y)/2) ≤ (f(x)+f(y))/2` must
/// hold for all `x, y ∈ dom f` at ℓ∞ distance 2. A box domain skips the set
/// check; other domains are limited to the set check's dimension guard.
pub fn check_integrally_convex_fn(f: &FnOracle) -> Result<CheckReport> {
    let dom = f.nonempty_domain()?;
    if !f.domain_is_box() {
        let r = check_integrally_convex_set(&dom)?;
        if !r.verdict {
            return Ok(r.relabel(ClassTag::IntegrallyConvex));
        }
    }
    let offsets = distance_two_offsets(f.dim());
    let witness = dom.par_iter().find_map_first(|x| {
        let fx = f.value(x);
        offsets.iter().find_map(|d| {
            let y = x.offset(d, 1);
            let fy = f.value(&y);
            if !fy.is_finite() {
                return None;
            }
            let rhs = half(fx.clone() + fy);
            let lhs = midpoint_extension(f, x, &y);
            (lhs > rhs).then(|| Witness::Pair {
                x: x.clone(),
                y,
                lhs,
                rhs,
            })
        })
    });
    Ok(CheckReport::from_witness(
        ClassTag::IntegrallyConvex,
        witness,
    ))
}

/// Scans pairs `x < y` of `dom f` in lexicographic order.
fn scan_pairs<F>(f: &FnOracle, class: ClassTag, test: F) -> Result<CheckReport>
where
    F: Fn(&IntPoint, &IntPoint) -> Option<Witness> + Sync,
{
    let dom = f.nonempty_domain()?;
    let witness = (0..dom.len())
        .into_par_iter()
        .find_map_first(|a| dom[a + 1..].iter().find_map(|y| test(&dom[a], y)));
    Ok(CheckReport::from_witness(class, witness))
}

/// Discrete midpoint convexity:
/// `f(x) + f(y) ≥ f(⌈(x+y)/2⌉) + f(⌊(x+y)/2⌋)` for all `x, y ∈ dom f`.
pub fn check_lnat(f: &FnOracle) -> Result<CheckReport> {
    scan_pairs(f, ClassTag::Lnat, |x, y| {
        let up: Vec<i64> = (0..x.dim())
            .map(|i| (x[i] + y[i] + 1).div_euclid(2))
            .collect();
        let down: Vec<i64> = (0..x.dim()).map(|i| (x[i] + y[i]).div_euclid(2)).collect();
        let lhs = f.value(&IntPoint(up)) + f.value(&IntPoint(down));
        let rhs = f.value(x) + f.value(y);
        (lhs > rhs).then(|| Witness::Pair {
            x: x.clone(),
            y: y.clone(),
            lhs,
            rhs,
        })
    })
}

/// Submodularity: `f(x) + f(y) ≥ f(x ∨ y) + f(x ∧ y)`.
pub fn check_submodular(f: &FnOracle) -> Result<CheckReport> {
    scan_pairs(f, ClassTag::Submodular, |x, y| {
        if x.le(y) || y.le(x) {
            return None;
        }
        let lhs = f.value(&x.join(y)) + f.value(&x.meet(y));
        let rhs = f.value(x) + f.value(y);
        (lhs > rhs).then(|| Witness::Pair {
            x: x.clone(),
            y: y.clone(),
            lhs,
            rhs,
        })
    })
}

/// The M♮ exchange property: for all `x, y ∈ dom f` and `i ∈ supp⁺(x − y)`
/// some `j ∈ supp⁻(x − y) ∪ {0}` gives
/// `f(x) + f(y) ≥ f(x − eⁱ + eʲ) + f(y + eⁱ − eʲ)`.
///
/// Ordered pairs are scanned with `x` outer, both lexicographic.
pub fn check_mnat(f: &FnOracle) -> Result<CheckReport> {
    let dom = f.nonempty_domain()?;
    let n = f.dim();
    let witness = dom.par_iter().find_map_first(|x| {
        dom.iter().find_map(|y| {
            if x == y {
                return None;
            }
            let rhs = f.value(x) + f.value(y);
            let minus: Vec<usize> = (0..n).filter(|&j| x[j] < y[j]).collect();
            (0..n).filter(|&i| x[i] > y[i]).find_map(|i| {
                let mut best = Value::PosInfinity;
                for j in std::iter::once(None).chain(minus.iter().map(|&j| Some(j))) {
                    let mut xs = x.clone();
                    let mut ys = y.clone();
                    xs.0[i] -= 1;
                    ys.0[i] += 1;
                    if let Some(j) = j {
                        xs.0[j] += 1;
                        ys.0[j] -= 1;
                    }
                    let v = f.value(&xs) + f.value(&ys);
                    if v < best {
                        best = v;
                    }
                }
                (best > rhs).then(|| Witness::Exchange {
                    x: x.clone(),
                    y: y.clone(),
                    i,
                    lhs: best,
                    rhs: rhs.clone(),
                })
            })
        })
    });
    Ok(CheckReport::from_witness(ClassTag::Mnat, witness))
}
