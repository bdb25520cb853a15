//! Integer neighborhoods and the local convex extension `f̃`.
//!
//! `f̃(x)` is the least value of a convex combination of `f` over the integer
//! points `y` with `|x_i − y_i| < 1`, among combinations whose barycenter is
//! `x`. It is computed exactly by the simplex kernel in [`crate::lp`].

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::lp::{lp_min, LpOutcome};
use crate::oracle::FnOracle;
use crate::point::{IntPoint, RationalPoint};
use crate::value::floor_i64;
use crate::{Rational, Value};

/// The integer points strictly within ℓ∞ distance 1 of `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: RationalPoint,
    /// Lexicographically sorted; `2^k` points for `k` fractional coordinates.
    pub points: Vec<IntPoint>,
}

/// Weights realizing `f̃(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCertificate {
    #[serde(serialize_with = "crate::value::serialize_rational")]
    pub value: Rational,
    /// Points with strictly positive weight.
    #[serde(serialize_with = "ser_support")]
    pub support: Vec<(IntPoint, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Finite(ExtensionCertificate),
    /// `x` is not a convex combination of finite points of `N(x)`.
    Infinite,
}

impl Extension {
    pub fn value(&self) -> Value {
        match self {
            Extension::Finite(c) => Value::Finite(c.value.clone()),
            Extension::Infinite => Value::PosInfinity,
        }
    }

    pub fn certificate(&self) -> Option<&ExtensionCertificate> {
        match self {
            Extension::Finite(c) => Some(c),
            Extension::Infinite => None,
        }
    }
}

/// `N(x)`, lexicographically sorted.
pub fn integer_neighborhood(x: &RationalPoint) -> Neighborhood {
    let mut points = vec![IntPoint(Vec::with_capacity(x.dim()))];
    for c in x.coords() {
        let lo = floor_i64(c);
        let options: &[i64] = if c.is_integer() { &[lo] } else { &[lo, lo + 1] };
        points = points
            .into_iter()
            .flat_map(|p| {
                options.iter().map(move |&o| {
                    let mut q = p.clone();
                    q.0.push(o);
                    q
                })
            })
            .collect();
    }
    Neighborhood {
        center: x.clone(),
        points,
    }
}

/// Computes `f̃(x)` with a certificate.
pub fn evaluate_extension(f: &FnOracle, x: &RationalPoint) -> Result<Extension> {
    crate::point::IntPoint(vec![0; x.dim()]).check_dim(f.dim())?;
    let frac: Vec<usize> = (0..x.dim())
        .filter(|&i| !x.coords()[i].is_integer())
        .collect();
    let nb = integer_neighborhood(x);
    let cols: Vec<(IntPoint, Rational)> = nb
        .points
        .into_iter()
        .filter_map(|y| {
            let v = f.value(&y).into_finite()?;
            Some((y, v))
        })
        .collect();

    match frac.len() {
        0 => Ok(match cols.into_iter().next() {
            Some((y, v)) => Extension::Finite(ExtensionCertificate {
                value: v,
                support: vec![(y, Rational::one())],
            }),
            None => Extension::Infinite,
        }),
        1 => {
            if cols.len() < 2 {
                return Ok(Extension::Infinite);
            }
            let i = frac[0];
            let t = x.coords()[i].clone() - x.coords()[i].floor();
            let (lo, hi) = (&cols[0], &cols[1]);
            let w_lo = Rational::one() - t.clone();
            let value = w_lo.clone() * lo.1.clone() + t.clone() * hi.1.clone();
            Ok(Extension::Finite(ExtensionCertificate {
                value,
                support: vec![(lo.0.clone(), w_lo), (hi.0.clone(), t)],
            }))
        }
        _ => {
            if cols.is_empty() {
                return Ok(Extension::Infinite);
            }
            let costs: Vec<Rational> = cols.iter().map(|(_, v)| v.clone()).collect();
            let mut a: Vec<Vec<Rational>> = frac
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|(y, _)| Rational::from_integer(y[i].into()))
                        .collect()
                })
                .collect();
            a.push(vec![Rational::one(); cols.len()]);
            let mut b: Vec<Rational> = frac.iter().map(|&i| x.coords()[i].clone()).collect();
            b.push(Rational::one());
            match lp_min(&costs, &a, &b)? {
                LpOutcome::Infeasible => Ok(Extension::Infinite),
                LpOutcome::Optimal(sol) => Ok(Extension::Finite(ExtensionCertificate {
                    value: sol.value,
                    support: cols
                        .into_iter()
                        .zip(sol.x)
                        .filter(|(_, w)| !w.is_zero())
                        .map(|((y, _), w)| (y, w))
                        .collect(),
                })),
            }
        }
    }
}

/// `f̃(x)` without the certificate.
pub fn extension_value(f: &FnOracle, x: &RationalPoint) -> Result<Value> {
    Ok(evaluate_extension(f, x)?.value())
}

fn ser_support<S: serde::Serializer>(
    v: &[(IntPoint, Rational)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, w) in v {
        seq.serialize_element(&(p, crate::value::render_rational(w)))?;
    }
    seq.end()
}
