//! Extended values `ℝ ∪ {+∞}` over an exact scalar, plus rational text I/O.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Rational;

/// A finite exact value or `+∞`.
///
/// The derived order puts every `Finite` below `PosInfinity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtValue<T> {
    Finite(T),
    PosInfinity,
}

impl<T: Scalar> ExtValue<T> {
    pub fn zero() -> Self {
        ExtValue::Finite(T::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::PosInfinity => None,
        }
    }

    pub fn into_finite(self) -> Option<T> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::PosInfinity => None,
        }
    }

    /// Multiplies by a scalar. `+∞ · 0` is undefined and reported as an
    /// error; a negative factor on `+∞` would leave the extended line and is
    /// rejected the same way.
    pub fn scale(&self, k: &T) -> Result<Self, Error> {
        match self {
            ExtValue::Finite(v) => Ok(ExtValue::Finite(v.clone() * k.clone())),
            ExtValue::PosInfinity if k.is_positive() => Ok(ExtValue::PosInfinity),
            ExtValue::PosInfinity => Err(Error::InfiniteTimesNonPositive),
        }
    }
}

impl<T: Scalar> Add for ExtValue<T> {
    type Output = ExtValue<T>;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::PosInfinity,
        }
    }
}

impl<T: Scalar> Add for &ExtValue<T> {
    type Output = ExtValue<T>;

    fn add(self, rhs: Self) -> ExtValue<T> {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a.clone() + b.clone()),
            _ => ExtValue::PosInfinity,
        }
    }
}

impl<T: Scalar> From<T> for ExtValue<T> {
    fn from(v: T) -> Self {
        ExtValue::Finite(v)
    }
}

impl<T: Scalar> PartialEq<T> for ExtValue<T> {
    fn eq(&self, other: &T) -> bool {
        matches!(self, ExtValue::Finite(v) if v == other)
    }
}

impl<T: Scalar> PartialOrd<T> for ExtValue<T> {
    fn partial_cmp(&self, other: &T) -> Option<Ordering> {
        Some(match self {
            ExtValue::Finite(v) => v.cmp(other),
            ExtValue::PosInfinity => Ordering::Greater,
        })
    }
}

impl fmt::Display for ExtValue<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => f.write_str(&render_rational(v)),
            ExtValue::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl serde::Serialize for ExtValue<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Serializes a rational as its canonical string.
pub fn serialize_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render_rational(q))
}

/// `⌊q⌋` as `i64`; panics if it does not fit.
pub fn floor_i64(q: &Rational) -> i64 {
    i64::try_from(q.floor().to_integer()).expect("value fits in i64")
}

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Finite decimal expansion of `q` when one exists (denominator of the form
/// `2^a 5^b`), otherwise `None`.
pub fn render_decimal(q: &Rational) -> Option<String> {
    let mut den = q.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut digits = 0u32;
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    digits = digits.max(twos).max(fives);
    let scale = BigInt::from(10).pow(digits);
    let scaled = q.numer() * &scale / q.denom();
    if digits == 0 {
        return Some(scaled.to_string());
    }
    let neg = scaled < BigInt::zero();
    let abs = if neg { -scaled } else { scaled };
    let s = format!("{:0>width$}", abs.to_string(), width = digits as usize + 1);
    let (whole, frac) = s.split_at(s.len() - digits as usize);
    Some(format!("{}{}.{}", if neg { "-" } else { "" }, whole, frac))
}

/// Parses `"3"`, `"-4"`, `"1/2"`, `"13.5"`, `"-0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let joined = format!(
            "{}{}",
            if whole_digits.is_empty() {
                "0"
            } else {
                whole_digits
            },
            frac
        );
        let mag = BigInt::from_str(&joined).map_err(|_| bad())?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        let q = Rational::new(mag, den);
        return Ok(if neg { -q } else { q });
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}
