//! Reference solver for the local convex extension: enumerates every basic
//! solution of `Aλ = b` by Gaussian elimination and keeps the cheapest
//! nonnegative one.

#![allow(dead_code, clippy::needless_range_loop, clippy::explicit_counter_loop)]

use icx_core::extension::{evaluate_extension, integer_neighborhood, Extension};
use icx_core::oracle::table_from_points;
use icx_core::value::{int, ratio};
use icx_core::{FnOracle, IntPoint, Rational, RationalPoint, Value};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The unique solution of `A_S λ = b` on columns `cols`, if `A_S` has full
/// column rank and the system is consistent.
fn solve(a: &[Vec<Rational>], b: &[Rational], cols: &[usize]) -> Option<Vec<Rational>> {
    let m = a.len();
    let k = cols.len();
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            cols.iter()
                .map(|&j| a[i][j].clone())
                .chain([b[i].clone()])
                .collect()
        })
        .collect();
    let mut row = 0;
    for c in 0..k {
        let piv = (row..m).find(|&r| !t[r][c].is_zero())?;
        t.swap(row, piv);
        let p = t[row][c].clone();
        for v in t[row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        for r in 0..m {
            if r != row && !t[r][c].is_zero() {
                let f = t[r][c].clone();
                for j in 0..=k {
                    let d = f.clone() * t[row][j].clone();
                    t[r][j] = t[r][j].clone() - d;
                }
            }
        }
        row += 1;
    }
    if t[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| t[i][k].clone()).collect())
}

/// `min cᵀλ s.t. Aλ = b, λ ≥ 0` over all basic solutions.
pub fn basic_solution_min(
    costs: &[Rational],
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Option<Rational> {
    let n = costs.len();
    (1..=a.len().min(n))
        .flat_map(|k| (0..n).combinations(k))
        .filter_map(|cols| {
            let lam = solve(a, b, &cols)?;
            lam.iter().all(|v| !v.is_negative()).then(|| {
                cols.iter()
                    .zip(&lam)
                    .map(|(&j, l)| costs[j].clone() * l.clone())
                    .fold(Rational::zero(), |s, v| s + v)
            })
        })
        .min()
}

/// `f̃(x)` by basic-solution enumeration, using all coordinates as rows.
pub fn reference_extension(f: &FnOracle, x: &RationalPoint) -> Value {
    let cols: Vec<(IntPoint, Rational)> = integer_neighborhood(x)
        .points
        .into_iter()
        .filter_map(|y| f.value(&y).into_finite().map(|v| (y, v)))
        .collect();
    if cols.is_empty() {
        return Value::PosInfinity;
    }
    let n = x.dim();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| cols.iter().map(|(y, _)| int(y[i])).collect())
        .collect();
    a.push(vec![Rational::one(); cols.len()]);
    let mut b: Vec<Rational> = x.coords().to_vec();
    b.push(Rational::one());
    let costs: Vec<Rational> = cols.iter().map(|(_, v)| v.clone()).collect();
    match basic_solution_min(&costs, &a, &b) {
        Some(v) => Value::Finite(v),
        None => Value::PosInfinity,
    }
}

/// A random table on the neighborhood of a random rational point with up
/// to four fractional coordinates, some values `+∞`.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (FnOracle, RationalPoint) {
    let n = rng.random_range(1..=5);
    let frac = rng.random_range(0..=n.min(4));
    let mut coords: Vec<Rational> = (0..n).map(|_| int(rng.random_range(-3..=3))).collect();
    for i in rand::seq::index::sample(rng, n, frac) {
        let den = rng.random_range(2..=7);
        coords[i] = coords[i].clone() + ratio(rng.random_range(1..den), den);
    }
    let x = RationalPoint(coords);
    let mut entries: Vec<(IntPoint, Value)> = Vec::new();
    for y in integer_neighborhood(&x).points {
        if rng.random_range(0..6) != 0 {
            entries.push((
                y,
                Value::Finite(ratio(rng.random_range(-20..=20), rng.random_range(1..=4))),
            ));
        }
    }
    let f = if entries.is_empty() {
        table_from_points(n, [(IntPoint(vec![100; n]), Value::zero())]).unwrap()
    } else {
        table_from_points(n, entries).unwrap()
    };
    (f, x)
}

/// Compares the kernel against the reference and checks its certificate.
pub fn check_instance(f: &FnOracle, x: &RationalPoint) -> Result<(), String> {
    let got = evaluate_extension(f, x).map_err(|e| e.to_string())?;
    let want = reference_extension(f, x);
    if got.value() != want {
        return Err(format!(
            "f̃({x}) = {} but the reference gives {want}",
            got.value()
        ));
    }
    if let Extension::Finite(cert) = got {
        let total = cert
            .support
            .iter()
            .fold(Rational::zero(), |s, (_, w)| s + w.clone());
        if !total.is_one() {
            return Err(format!("weights sum to {total} at {x}"));
        }
        for i in 0..x.dim() {
            let c = cert
                .support
                .iter()
                .fold(Rational::zero(), |s, (y, w)| s + w.clone() * int(y[i]));
            if c != x.coords()[i] {
                return Err(format!("barycenter coordinate {i} is {c} at {x}"));
            }
        }
        let v = cert.support.iter().fold(Rational::zero(), |s, (y, w)| {
            s + w.clone() * f.value(y).into_finite().expect("support lies in dom f")
        });
        if v != cert.value || cert.support.iter().any(|(_, w)| !w.is_positive()) {
            return Err(format!("certificate value mismatch at {x}"));
        }
    }
    Ok(())
}
