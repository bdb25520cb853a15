//! Function oracles `f: ℤⁿ → ℚ ∪ {+∞}` with a declared bounding box.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::point::{IntBox, IntPoint};
use crate::{Rational, Value};

type Evaluator = dyn Fn(&IntPoint) -> Value + Send + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Table,
    Generator,
}

enum Source {
    Table(HashMap<IntPoint, Rational>),
    Generator {
        eval: Box<Evaluator>,
        memo: DashMap<IntPoint, Value>,
    },
}

struct Inner {
    bbox: IntBox,
    source: Source,
}

/// A pure function on `ℤⁿ` that is `+∞` outside its bounding box.
///
/// Cloning is cheap (shared). Generator-backed oracles memoize evaluations
/// in a concurrent map, so an oracle may be queried from many threads.
#[derive(Clone)]
pub struct FnOracle {
    inner: Arc<Inner>,
    name: Option<Arc<str>>,
}

impl fmt::Debug for FnOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnOracle")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("bbox", &self.inner.bbox)
            .finish()
    }
}

impl FnOracle {
    /// Wraps a closure. The closure is only ever called on points inside
    /// `bbox`.
    pub fn from_fn<F>(bbox: IntBox, eval: F) -> Self
    where
        F: Fn(&IntPoint) -> Value + Send + Sync + 'static,
    {
        FnOracle {
            inner: Arc::new(Inner {
                bbox,
                source: Source::Generator {
                    eval: Box::new(eval),
                    memo: DashMap::new(),
                },
            }),
            name: None,
        }
    }

    /// Indicator function of a finite set: `0` on the set, `+∞` elsewhere.
    pub fn indicator(points: &[IntPoint]) -> Result<Self> {
        let n = points.first().ok_or(Error::EmptySet)?.dim();
        let entries = points.iter().map(|p| (p.clone(), Value::zero()));
        table_from_points(n, entries)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(Arc::from(name.into()));
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.inner.bbox.dim()
    }

    pub fn bbox(&self) -> &IntBox {
        &self.inner.bbox
    }

    pub fn kind(&self) -> OracleKind {
        match self.inner.source {
            Source::Table(_) => OracleKind::Table,
            Source::Generator { .. } => OracleKind::Generator,
        }
    }

    /// `f(x)`, with a dimension check.
    pub fn evaluate(&self, x: &IntPoint) -> Result<Value> {
        x.check_dim(self.dim())?;
        Ok(self.value(x))
    }

    /// `f(x)` for a point already known to have the right dimension.
    ///
    /// Panics on a dimension mismatch.
    pub fn value(&self, x: &IntPoint) -> Value {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        if !self.inner.bbox.contains(x) {
            return Value::PosInfinity;
        }
        match &self.inner.source {
            Source::Table(t) => t.get(x).cloned().map_or(Value::PosInfinity, Value::Finite),
            Source::Generator { eval, memo } => {
                if let Some(v) = memo.get(x) {
                    return v.clone();
                }
                let v = eval(x);
                memo.insert(x.clone(), v.clone());
                v
            }
        }
    }

    /// Finite-valued points of the box, lexicographically sorted.
    pub fn domain(&self) -> Vec<IntPoint> {
        match &self.inner.source {
            Source::Table(t) => {
                let mut pts: Vec<IntPoint> = t.keys().cloned().collect();
                pts.sort();
                pts
            }
            Source::Generator { .. } => self
                .inner
                .bbox
                .points()
                .filter(|p| self.value(p).is_finite())
                .collect(),
        }
    }

    /// `(x, f(x))` for every finite point, lexicographically sorted.
    pub fn finite_entries(&self) -> Vec<(IntPoint, Rational)> {
        self.inner
            .bbox
            .points()
            .filter_map(|p| {
                let v = self.value(&p).into_finite()?;
                Some((p, v))
            })
            .collect()
    }

    /// Non-empty domain, or [`Error::EmptyDomain`].
    pub fn nonempty_domain(&self) -> Result<Vec<IntPoint>> {
        let dom = self.domain();
        if dom.is_empty() {
            Err(Error::EmptyDomain)
        } else {
            Ok(dom)
        }
    }

    /// Whether every point of the bounding box is finite.
    pub fn domain_is_box(&self) -> bool {
        self.inner.bbox.points().all(|p| self.value(&p).is_finite())
    }

    /// The same function with `+∞` outside `window`.
    pub fn restrict(&self, window: &IntBox) -> Result<FnOracle> {
        window.lower().check_dim(self.dim())?;
        let bbox = match self.inner.bbox.intersect(window) {
            Some(b) => b,
            // disjoint: keep a one-point box that evaluates to +inf
            None => IntBox::new(window.lower().clone(), window.lower().clone())?,
        };
        let base = self.clone();
        let keep = window.clone();
        Ok(FnOracle::from_fn(bbox, move |x| {
            if keep.contains(x) {
                base.value(x)
            } else {
                Value::PosInfinity
            }
        }))
    }

    /// Materializes the oracle as a table.
    pub fn to_table(&self) -> Result<FnOracle> {
        let entries = self
            .finite_entries()
            .into_iter()
            .map(|(p, v)| (p, Value::Finite(v)));
        table_from_points(self.dim(), entries)
    }
}

/// Builds a table oracle. Entries with value `+∞` are accepted and dropped;
/// the bounding box is the tight box of the finite entries.
pub fn table_from_points<I>(n: usize, entries: I) -> Result<FnOracle>
where
    I: IntoIterator<Item = (IntPoint, Value)>,
{
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let table = collect_table(n, entries, None)?;
    let bbox = IntBox::hull(table.keys()).ok_or(Error::EmptyDomain)?;
    Ok(FnOracle {
        inner: Arc::new(Inner {
            bbox,
            source: Source::Table(table),
        }),
        name: None,
    })
}

/// Builds a table oracle on a declared box; every entry must lie in it.
/// The finite support may be empty.
pub fn table_in_box<I>(bbox: IntBox, entries: I) -> Result<FnOracle>
where
    I: IntoIterator<Item = (IntPoint, Value)>,
{
    let table = collect_table(bbox.dim(), entries, Some(&bbox))?;
    Ok(FnOracle {
        inner: Arc::new(Inner {
            bbox,
            source: Source::Table(table),
        }),
        name: None,
    })
}

fn collect_table<I>(
    n: usize,
    entries: I,
    bbox: Option<&IntBox>,
) -> Result<HashMap<IntPoint, Rational>>
where
    I: IntoIterator<Item = (IntPoint, Value)>,
{
    let mut seen = std::collections::HashSet::new();
    let mut table = HashMap::new();
    for (p, v) in entries {
        p.check_dim(n)?;
        if let Some(b) = bbox {
            if !b.contains(&p) {
                return Err(Error::InvalidArgument(format!(
                    "point {p} lies outside the box"
                )));
            }
        }
        if !seen.insert(p.clone()) {
            return Err(Error::DuplicatePoint(p.to_string()));
        }
        if let Value::Finite(v) = v {
            table.insert(p, v);
        }
    }
    Ok(table)
}

/// `f(x)`; see [`FnOracle::evaluate`].
pub fn evaluate(f: &FnOracle, x: &IntPoint) -> Result<Value> {
    f.evaluate(x)
}

/// Affine lattice map `x ↦ z + (s_i · x_{σ(i)})_i`: an origin shift, a
/// permutation of components and individual sign flips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    shift: Vec<i64>,
    perm: Vec<usize>,
    signs: Vec<i64>,
}

impl Transform {
    /// `perm` is 0-based: component `i` of the image reads `x[perm[i]]`.
    pub fn new(shift: Vec<i64>, perm: Vec<usize>, signs: Vec<i64>) -> Result<Self> {
        let n = shift.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        if signs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: signs.len(),
            });
        }
        let mut hit = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidArgument(format!(
                "signs must be ±1, got {signs:?}"
            )));
        }
        Ok(Transform { shift, perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Transform {
            shift: vec![0; n],
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn shift(z: Vec<i64>) -> Self {
        let n = z.len();
        Transform {
            shift: z,
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn signs(s: Vec<i64>) -> Result<Self> {
        let n = s.len();
        Transform::new(vec![0; n], (0..n).collect(), s)
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn apply(&self, x: &IntPoint) -> IntPoint {
        IntPoint(
            (0..self.dim())
                .map(|i| self.shift[i] + self.signs[i] * x[self.perm[i]])
                .collect(),
        )
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &Transform) -> Transform {
        let n = self.dim();
        Transform {
            shift: (0..n)
                .map(|i| self.shift[i] + self.signs[i] * inner.shift[self.perm[i]])
                .collect(),
            perm: (0..n).map(|i| inner.perm[self.perm[i]]).collect(),
            signs: (0..n)
                .map(|i| self.signs[i] * inner.signs[self.perm[i]])
                .collect(),
        }
    }

    /// The box `{x : self(x) ∈ b}`.
    fn preimage(&self, b: &IntBox) -> IntBox {
        let n = self.dim();
        let mut lo = vec![0; n];
        let mut hi = vec![0; n];
        for i in 0..n {
            let a = self.signs[i] * (b.lower()[i] - self.shift[i]);
            let c = self.signs[i] * (b.upper()[i] - self.shift[i]);
            lo[self.perm[i]] = a.min(c);
            hi[self.perm[i]] = a.max(c);
        }
        IntBox::new(IntPoint(lo), IntPoint(hi)).expect("preimage of a box is a box")
    }
}

/// `g(x) = f(t(x))`.
pub fn apply_transform(f: &FnOracle, t: &Transform) -> Result<FnOracle> {
    if t.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: t.dim(),
        });
    }
    let bbox = t.preimage(f.bbox());
    let base = f.clone();
    let t = t.clone();
    Ok(FnOracle::from_fn(bbox, move |x| base.value(&t.apply(x))))
}
