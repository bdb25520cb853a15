//! Integer and rational points, and integer boxes.

use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::value::render_rational;
use crate::Rational;

/// A point of `ℤⁿ`.
///
/// Coordinates are machine integers; every structure in this crate lives in
/// an explicitly bounded box, so the arithmetic never approaches `i64` range.
/// Derived ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoint(pub Vec<i64>);

impl IntPoint {
    pub fn new(coords: Vec<i64>) -> Self {
        IntPoint(coords)
    }

    pub fn zeros(n: usize) -> Self {
        IntPoint(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        IntPoint(v)
    }

    /// Characteristic vector of `subset` (0-based indices).
    pub fn indicator(n: usize, subset: &[usize]) -> Self {
        let mut v = vec![0; n];
        for &i in subset {
            v[i] = 1;
        }
        IntPoint(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, k: i64) -> IntPoint {
        IntPoint(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k·d`.
    pub fn offset(&self, d: &[i64], k: i64) -> IntPoint {
        IntPoint(self.0.iter().zip(d).map(|(a, b)| a + k * b).collect())
    }

    pub fn dist_inf(&self, other: &IntPoint) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or(0)
    }

    pub fn norm_inf(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn le(&self, other: &IntPoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &IntPoint) -> IntPoint {
        IntPoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn join(&self, other: &IntPoint) -> IntPoint {
        IntPoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(
            self.0
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                got: self.dim(),
            })
        }
    }
}

impl From<Vec<i64>> for IntPoint {
    fn from(v: Vec<i64>) -> Self {
        IntPoint(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntPoint {
    fn from(v: [i64; N]) -> Self {
        IntPoint(v.to_vec())
    }
}

impl Index<usize> for IntPoint {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl<'a> Add<&'a IntPoint> for &'a IntPoint {
    type Output = IntPoint;

    fn add(self, rhs: &IntPoint) -> IntPoint {
        IntPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a IntPoint> for &'a IntPoint {
    type Output = IntPoint;

    fn sub(self, rhs: &IntPoint) -> IntPoint {
        IntPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A point of `ℚⁿ`; coordinates are kept in reduced form by `Rational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// `(x + y) / 2`.
    pub fn midpoint(x: &IntPoint, y: &IntPoint) -> RationalPoint {
        let two = Rational::from_integer(2.into());
        RationalPoint(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| Rational::from_integer((a + b).into()) / two.clone())
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// The integer point, when every coordinate is integral and fits `i64`.
    pub fn to_int(&self) -> Option<IntPoint> {
        self.0
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(IntPoint)
    }

    /// Parses `"1,1/2,1/2"`.
    pub fn parse(s: &str) -> Result<RationalPoint> {
        s.split(',')
            .map(crate::value::parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(RationalPoint)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            f.write_str(&render_rational(c))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(render_rational).collect();
        v.serialize(s)
    }
}

/// The integer interval `[lower, upper]_ℤ`; never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntBox {
    lower: IntPoint,
    upper: IntPoint,
}

impl IntBox {
    pub fn new(lower: IntPoint, upper: IntPoint) -> Result<Self> {
        upper.check_dim(lower.dim())?;
        if lower.dim() == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(i) = (0..lower.dim()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::InvertedBox(i));
        }
        Ok(IntBox { lower, upper })
    }

    /// `[lo, hi]^n`.
    pub fn cube(n: usize, lo: i64, hi: i64) -> Result<Self> {
        IntBox::new(IntPoint(vec![lo; n]), IntPoint(vec![hi; n]))
    }

    /// Smallest box containing every point; `None` for an empty slice.
    pub fn hull<'a, I: IntoIterator<Item = &'a IntPoint>>(points: I) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for p in it {
            lo = lo.meet(p);
            hi = hi.join(p);
        }
        Some(IntBox {
            lower: lo,
            upper: hi,
        })
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &IntPoint {
        &self.lower
    }

    pub fn upper(&self) -> &IntPoint {
        &self.upper
    }

    pub fn contains(&self, x: &IntPoint) -> bool {
        x.dim() == self.dim() && self.lower.le(x) && x.le(&self.upper)
    }

    /// Number of integer points.
    pub fn len(&self) -> u128 {
        self.lower
            .0
            .iter()
            .zip(&self.upper.0)
            .map(|(l, u)| (u - l + 1) as u128)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn intersect(&self, other: &IntBox) -> Option<IntBox> {
        let lower = self.lower.join(&other.lower);
        let upper = self.upper.meet(&other.upper);
        lower.le(&upper).then_some(IntBox { lower, upper })
    }

    /// ℓ∞ diameter.
    pub fn diameter(&self) -> i64 {
        self.lower.dist_inf(&self.upper)
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> BoxPoints<'_> {
        BoxPoints {
            bx: self,
            next: Some(self.lower.clone()),
        }
    }
}

/// Lexicographic iterator over an [`IntBox`].
pub struct BoxPoints<'a> {
    bx: &'a IntBox,
    next: Option<IntPoint>,
}

impl Iterator for BoxPoints<'_> {
    type Item = IntPoint;

    fn next(&mut self) -> Option<IntPoint> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let lo = &self.bx.lower.0;
        let hi = &self.bx.upper.0;
        let mut i = succ.0.len();
        while i > 0 {
            i -= 1;
            if succ.0[i] < hi[i] {
                succ.0[i] += 1;
                self.next = Some(succ);
                return Some(cur);
            }
            succ.0[i] = lo[i];
        }
        Some(cur)
    }
}

/// All vectors of `{-1, 0, +1}ⁿ` in lexicographic order (the zero vector
/// included).
pub fn unit_directions(n: usize) -> Vec<Vec<i64>> {
    IntBox::cube(n, -1, 1)
        .map(|b| b.points().map(|p| p.0).collect())
        .unwrap_or_default()
}
