//! Worked examples as oracles, and seeded random integrally convex
//! instances.
//!
//! Fixture ids have stable string forms such as `ex4.4`,
//! `ex4.1:n=3,alpha=4` or `quad:n=3,seed=5`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checkers::{check_integrally_convex_fn, quadratic_oracle, QuadraticSpec};
use crate::error::{Error, Result};
use crate::oracle::{table_from_points, FnOracle};
use crate::point::{IntBox, IntPoint};
use crate::value::{int, ratio};
use crate::{Rational, Value};

const MAX_N: usize = 6;
const MAX_ALPHA: i64 = 8;
const MAX_M: usize = 3;
const TABLE_RETRIES: u32 = 200;

/// Families of random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Diagonally dominant quadratic with nonnegative diagonal.
    Quadratic,
    /// Diagonally dominant quadratic with nonpositive off-diagonal entries.
    Lnat,
    /// Sum of univariate convex sequences.
    Separable,
    /// Perturbed quadratic table on a cut box, kept only if it passes the
    /// integral convexity check.
    Table,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Quadratic,
        Family::Lnat,
        Family::Separable,
        Family::Table,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Quadratic => "quad",
            Family::Lnat => "lnat",
            Family::Separable => "sep",
            Family::Table => "table",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" | "quadratic" => Ok(Family::Quadratic),
            "lnat" => Ok(Family::Lnat),
            "sep" | "separable" => Ok(Family::Separable),
            "table" | "icx" => Ok(Family::Table),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureId {
    Ex1_1,
    Ex3_1,
    Ex4_1 { n: usize, alpha: i64 },
    Ex4_2 { n: usize, alpha: i64 },
    Ex4_3 { n: usize, alpha: i64 },
    Ex4_4,
    Ex4_5 { m: usize, alpha: i64 },
    Remark2_2,
    Random { family: Family, n: usize, seed: u64 },
}

impl FixtureId {
    /// Every named fixture with its default parameters.
    pub fn named() -> Vec<FixtureId> {
        vec![
            FixtureId::Ex1_1,
            FixtureId::Ex3_1,
            FixtureId::Ex4_1 { n: 2, alpha: 3 },
            FixtureId::Ex4_2 { n: 3, alpha: 3 },
            FixtureId::Ex4_3 { n: 3, alpha: 3 },
            FixtureId::Ex4_4,
            FixtureId::Ex4_5 { m: 2, alpha: 2 },
            FixtureId::Remark2_2,
        ]
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Ex1_1 => write!(f, "ex1.1"),
            FixtureId::Ex3_1 => write!(f, "ex3.1"),
            FixtureId::Ex4_1 { n, alpha } => write!(f, "ex4.1:n={n},alpha={alpha}"),
            FixtureId::Ex4_2 { n, alpha } => write!(f, "ex4.2:n={n},alpha={alpha}"),
            FixtureId::Ex4_3 { n, alpha } => write!(f, "ex4.3:n={n},alpha={alpha}"),
            FixtureId::Ex4_4 => write!(f, "ex4.4"),
            FixtureId::Ex4_5 { m, alpha } => write!(f, "ex4.5:m={m},alpha={alpha}"),
            FixtureId::Remark2_2 => write!(f, "remark2.2"),
            FixtureId::Random { family, n, seed } => write!(f, "{family}:n={n},seed={seed}"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s.split_once(':').unwrap_or((s, ""));
        let mut params: HashMap<&str, &str> = HashMap::new();
        for kv in tail.split(',').filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad parameter {kv:?} in {s:?}")))?;
            params.insert(k.trim(), v.trim());
        }
        let get = |key: &str, default: u64| -> Result<u64> {
            match params.get(key) {
                Some(v) => v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad value for {key} in {s:?}"))),
                None => Ok(default),
            }
        };
        let known = |keys: &[&str]| -> Result<()> {
            match params.keys().find(|k| !keys.contains(k)) {
                Some(k) => Err(Error::Parse(format!("unknown parameter {k:?} in {s:?}"))),
                None => Ok(()),
            }
        };
        let id = match head {
            "ex1.1" => FixtureId::Ex1_1,
            "ex3.1" => FixtureId::Ex3_1,
            "ex4.4" => FixtureId::Ex4_4,
            "remark2.2" => FixtureId::Remark2_2,
            "ex4.1" | "ex4.2" | "ex4.3" => {
                known(&["n", "alpha"])?;
                let (n, alpha) = (
                    get("n", if head == "ex4.1" { 2 } else { 3 })? as usize,
                    get("alpha", 3)? as i64,
                );
                match head {
                    "ex4.1" => FixtureId::Ex4_1 { n, alpha },
                    "ex4.2" => FixtureId::Ex4_2 { n, alpha },
                    _ => FixtureId::Ex4_3 { n, alpha },
                }
            }
            "ex4.5" => {
                known(&["m", "alpha"])?;
                FixtureId::Ex4_5 {
                    m: get("m", 2)? as usize,
                    alpha: get("alpha", 2)? as i64,
                }
            }
            other => {
                let family: Family = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown fixture {s:?}")))?;
                known(&["n", "seed"])?;
                FixtureId::Random {
                    family,
                    n: get("n", 2)? as usize,
                    seed: get("seed", 0)?,
                }
            }
        };
        if tail.is_empty()
            || !matches!(
                id,
                FixtureId::Ex1_1 | FixtureId::Ex3_1 | FixtureId::Ex4_4 | FixtureId::Remark2_2
            )
        {
            Ok(id)
        } else {
            Err(Error::Parse(format!("fixture {head} takes no parameters")))
        }
    }
}

/// A built fixture: a function, or a finite set.
#[derive(Clone, Debug)]
pub enum Fixture {
    Function(FnOracle),
    Set(Vec<IntPoint>),
}

impl Fixture {
    /// The function, or the indicator of the set.
    pub fn oracle(&self) -> FnOracle {
        match self {
            Fixture::Function(f) => f.clone(),
            Fixture::Set(s) => FnOracle::indicator(s).expect("fixture sets are nonempty"),
        }
    }

    pub fn set(&self) -> Option<&[IntPoint]> {
        match self {
            Fixture::Set(s) => Some(s),
            Fixture::Function(_) => None,
        }
    }
}

fn check_params(n: usize, alpha: i64) -> Result<()> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n = {n} outside 1..={MAX_N}"
        )));
    }
    if !(1..=MAX_ALPHA).contains(&alpha) {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} outside 1..={MAX_ALPHA}"
        )));
    }
    Ok(())
}

/// Builds the fixture.
pub fn build(id: FixtureId) -> Result<Fixture> {
    let named = |f: FnOracle| Ok(Fixture::Function(f.with_name(id.to_string())));
    match id {
        FixtureId::Ex1_1 => Ok(Fixture::Set(ex1_1_set())),
        FixtureId::Ex3_1 => named(ex3_1()),
        FixtureId::Ex4_1 { n, alpha } => {
            check_params(n, alpha)?;
            named(ex4_1(n, alpha))
        }
        FixtureId::Ex4_2 { n, alpha } => {
            check_params(n, alpha)?;
            named(ex4_2(n, alpha))
        }
        FixtureId::Ex4_3 { n, alpha } => {
            check_params(n, alpha)?;
            named(ex4_3(n, alpha))
        }
        FixtureId::Ex4_4 => named(ex4_4()),
        FixtureId::Ex4_5 { m, alpha } => {
            if !(1..=MAX_M).contains(&m) {
                return Err(Error::InvalidArgument(format!(
                    "m = {m} outside 1..={MAX_M}"
                )));
            }
            check_params(1, alpha)?;
            named(ex4_5(m, alpha))
        }
        FixtureId::Remark2_2 => Ok(Fixture::Set(vec![[0, 0].into(), [1, 0].into()])),
        FixtureId::Random { family, n, seed } => named(random_icx(n, seed, family)?),
    }
}

/// `{c₁(1,0,−1) + c₂(1,0,0) + c₃(0,1,−1) + c₄(0,1,0) : c ∈ {0,1}⁴}`, sorted.
pub fn ex1_1_set() -> Vec<IntPoint> {
    let gens = [[1, 0, -1], [1, 0, 0], [0, 1, -1], [0, 1, 0]];
    let mut out: Vec<IntPoint> = (0..16u32)
        .map(|mask| {
            let mut p = [0i64; 3];
            for (k, g) in gens.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for i in 0..3 {
                        p[i] += g[i];
                    }
                }
            }
            IntPoint::from(p)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A table on `[(0,0,0),(4,2,2)]` given as three slices `x₃ = 0,1,2`, each
/// listing rows `x₂ = 2,1,0` with `x₁ = 0..4`.
fn slices(data: [[[i64; 5]; 3]; 3]) -> FnOracle {
    let mut entries = Vec::with_capacity(45);
    for (x3, slice) in data.iter().enumerate() {
        for (r, row) in slice.iter().enumerate() {
            for (x1, &v) in row.iter().enumerate() {
                entries.push((
                    IntPoint::from([x1 as i64, 2 - r as i64, x3 as i64]),
                    Value::Finite(int(v)),
                ));
            }
        }
    }
    table_from_points(3, entries).expect("fixture table is well formed")
}

/// The integrally convex table whose 2-scaling is not integrally convex.
pub fn ex3_1() -> FnOracle {
    slices([
        [[3, 1, 1, 1, 3], [1, 0, 0, 0, 0], [0, 0, 0, 0, 3]],
        [[2, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, 0]],
        [[3, 2, 1, 0, 0], [2, 1, 0, 0, 0], [3, 0, 0, 0, 3]],
    ])
}

/// The integrally convex table where `(0,0,0)` is 2-local minimal at
/// distance 4 from the unique minimizer `(4,2,2)`.
pub fn ex4_4() -> FnOracle {
    slices([
        [[5, 1, 0, 0, 4], [2, -1, -2, 0, 3], [0, -1, 0, 1, 6]],
        [[4, 1, -2, -3, -1], [2, -1, -2, -3, -1], [2, -1, -2, 0, 5]],
        [[6, 3, 0, -3, -4], [6, 1, -2, -3, 1], [6, 2, 0, 3, 6]],
    ])
}

/// `Σ φ(x_i)` with `φ(t) = max(−t, (α−1)(t−α))` on `[−α, 2α]ⁿ`.
pub fn ex4_1(n: usize, alpha: i64) -> FnOracle {
    let bbox = IntBox::cube(n, -alpha, 2 * alpha).expect("valid box");
    FnOracle::from_fn(bbox, move |x| {
        Value::Finite(int(x
            .coords()
            .iter()
            .map(|&t| (-t).max((alpha - 1) * (t - alpha)))
            .sum()))
    })
}

/// `−x₁` on `{0 ≤ x_i − x_{i+1} ≤ α−1, 0 ≤ x_n ≤ α−1}`.
pub fn ex4_2(n: usize, alpha: i64) -> FnOracle {
    let a = alpha - 1;
    let upper: Vec<i64> = (0..n).map(|i| (n - i) as i64 * a).collect();
    let bbox = IntBox::new(IntPoint::zeros(n), IntPoint(upper)).expect("valid box");
    FnOracle::from_fn(bbox, move |x| {
        let chain = (0..n - 1).all(|i| (0..=a).contains(&(x[i] - x[i + 1])));
        if chain && (0..=a).contains(&x[n - 1]) {
            Value::Finite(int(-x[0]))
        } else {
            Value::PosInfinity
        }
    })
}

/// `−x₁` on `{0 ≤ Σx ≤ α−1, −(α−1) ≤ x_i ≤ 0 for i ≥ 2}`.
pub fn ex4_3(n: usize, alpha: i64) -> FnOracle {
    let a = alpha - 1;
    let mut lower = vec![-a; n];
    let mut upper = vec![0; n];
    lower[0] = 0;
    upper[0] = n as i64 * a;
    let bbox = IntBox::new(IntPoint(lower), IntPoint(upper)).expect("valid box");
    FnOracle::from_fn(bbox, move |x| {
        let s: i64 = x.coords().iter().sum();
        if (0..=a).contains(&s) {
            Value::Finite(int(-x[0]))
        } else {
            Value::PosInfinity
        }
    })
}

/// Coordinates of the bipartite flow example: `[0⁺, 1⁺..m⁺, 0⁻, 1⁻..m⁻]`.
pub fn ex4_5_index(m: usize, positive: bool, k: usize) -> usize {
    if positive {
        k
    } else {
        m + 1 + k
    }
}

/// `x(V⁻)` on the intersection of the two flow-boundary sets.
pub fn ex4_5(m: usize, alpha: i64) -> FnOracle {
    let a = alpha - 1;
    let mm = m as i64;
    let n = 2 * m + 2;
    let mut lower = vec![0i64; n];
    let mut upper = vec![0i64; n];
    upper[0] = mm * mm * a;
    lower[m + 1] = -mm * mm * a;
    for k in 1..=m {
        upper[k] = mm * a;
        lower[m + 1 + k] = -mm * a;
    }
    let bbox = IntBox::new(IntPoint(lower), IntPoint(upper)).expect("valid box");
    FnOracle::from_fn(bbox, move |x| {
        if ex4_5_contains(m, alpha, x) {
            Value::Finite(int((1..=m).map(|j| x[m + 1 + j]).sum()))
        } else {
            Value::PosInfinity
        }
    })
}

/// Membership in `X₁ ∩ X₂` of the flow example.
pub fn ex4_5_contains(m: usize, alpha: i64, x: &IntPoint) -> bool {
    let a = alpha - 1;
    let mm = m as i64;
    if x.dim() != 2 * m + 2 {
        return false;
    }
    let plus: Vec<i64> = (1..=m).map(|i| x[i]).collect();
    let minus: Vec<i64> = (1..=m).map(|j| -x[m + 1 + j]).collect();
    let (p0, n0) = (x[0], -x[m + 1]);
    // X₂: x_{i+} = μ_i, x_{j−} = −ν_j, x_{0+} = Σν, x_{0−} = −Σμ
    let in_range = |v: &i64| (0..=mm * a).contains(v);
    let x2 = plus.iter().all(in_range)
        && minus.iter().all(in_range)
        && p0 == minus.iter().sum::<i64>()
        && n0 == plus.iter().sum::<i64>();
    // X₁: x_{0+} = −x_{0−} = λ₀, and a matrix λ in [0, α−1] with row sums
    // x_{i+} and column sums −x_{j−}
    x2 && p0 == n0 && (0..=mm * mm * a).contains(&p0) && transport(&plus, &mut minus.clone(), a)
}

/// Whether a matrix with entries in `[0, cap]` has the given row and column
/// sums. `cols` is restored on return.
fn transport(rows: &[i64], cols: &mut [i64], cap: i64) -> bool {
    let Some((&r, rest)) = rows.split_first() else {
        return cols.iter().all(|&c| c == 0);
    };
    fill_row(r, 0, rest, cols, cap)
}

fn fill_row(left: i64, j: usize, rest: &[i64], cols: &mut [i64], cap: i64) -> bool {
    if j == cols.len() {
        return left == 0 && transport(rest, cols, cap);
    }
    let room: i64 = cols[j + 1..].iter().map(|&c| c.min(cap)).sum();
    let hi = left.min(cap).min(cols[j]);
    let lo = (left - room).max(0);
    for v in lo..=hi {
        cols[j] -= v;
        let ok = fill_row(left - v, j + 1, rest, cols, cap);
        cols[j] += v;
        if ok {
            return true;
        }
    }
    false
}

/// The closed-form unique minimizer of [`ex4_5`].
pub fn ex4_5_minimizer(m: usize, alpha: i64) -> IntPoint {
    let a = alpha - 1;
    let mm = m as i64;
    let mut x = vec![0i64; 2 * m + 2];
    x[0] = mm * mm * a;
    x[m + 1] = -mm * mm * a;
    for k in 1..=m {
        x[k] = mm * a;
        x[m + 1 + k] = -mm * a;
    }
    IntPoint(x)
}

fn half_width(n: usize) -> i64 {
    match n {
        1 | 2 => 4,
        3 => 3,
        4 => 2,
        _ => 1,
    }
}

fn random_box(rng: &mut ChaCha8Rng, n: usize) -> IntBox {
    let r = half_width(n);
    let lower: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=0) - r).collect();
    let upper: Vec<i64> = lower
        .iter()
        .map(|&l| l + 2 * r + rng.random_range(-1..=0))
        .collect();
    IntBox::new(IntPoint(lower), IntPoint(upper)).expect("valid box")
}

fn random_quadratic(rng: &mut ChaCha8Rng, n: usize, nonpositive: bool) -> QuadraticSpec {
    let mut q = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = if nonpositive {
                rng.random_range(-2..=0)
            } else {
                rng.random_range(-2..=2)
            };
            q[i][j] = v;
            q[j][i] = v;
        }
    }
    for i in 0..n {
        let off: i64 = (0..n).filter(|&j| j != i).map(|j| q[i][j].abs()).sum();
        q[i][i] = off + rng.random_range(0..=2);
    }
    let p: Vec<Rational> = (0..n).map(|_| int(rng.random_range(-6..=6))).collect();
    QuadraticSpec {
        q: q.into_iter()
            .map(|row| row.into_iter().map(int).collect())
            .collect(),
        p,
        bbox: random_box(rng, n),
    }
}

fn random_separable(rng: &mut ChaCha8Rng, n: usize) -> FnOracle {
    let bbox = random_box(rng, n);
    let tables: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let len = (bbox.upper()[i] - bbox.lower()[i] + 1) as usize;
            let mut slope: i64 = rng.random_range(-6..=0);
            let mut v = rng.random_range(-3..=3);
            let mut out = Vec::with_capacity(len);
            for _ in 0..len {
                out.push(v);
                v += slope;
                slope += rng.random_range(0..=2);
            }
            out
        })
        .collect();
    let lower = bbox.lower().clone();
    FnOracle::from_fn(bbox, move |x| {
        Value::Finite(int((0..x.dim())
            .map(|i| tables[i][(x[i] - lower[i]) as usize])
            .sum()))
    })
}

fn random_table(rng: &mut ChaCha8Rng, n: usize) -> FnOracle {
    let spec = random_quadratic(rng, n, false);
    let base = quadratic_oracle(&spec).expect("symmetric").oracle;
    let bbox = spec.bbox.clone();
    // a cut of the box by difference (or, for n = 2, sum) constraints
    let cuts: Vec<(Vec<i64>, i64)> = match n {
        1 => vec![],
        2 => {
            let (l, u) = (bbox.lower(), bbox.upper());
            let d_hi = u[0] - l[1];
            let s_hi = u[0] + u[1];
            vec![
                (vec![1, -1], d_hi - rng.random_range(0..=2)),
                (vec![1, 1], s_hi - rng.random_range(0..=2)),
                (vec![-1, 1], (u[1] - l[0]) - rng.random_range(0..=2)),
            ]
        }
        _ => {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            let mut a = vec![0i64; n];
            a[i] = 1;
            a[j] = -1;
            vec![(a, rng.random_range(0..=2))]
        }
    };
    let entries: Vec<(IntPoint, Value)> = bbox
        .points()
        .filter(|p| {
            cuts.iter()
                .all(|(a, c)| (0..n).map(|k| a[k] * p[k]).sum::<i64>() <= *c)
        })
        .map(|p| {
            let bump = ratio(rng.random_range(-1..=1), rng.random_range(2..=4));
            let v = base.value(&p).into_finite().expect("in box") + bump;
            (p, Value::Finite(v))
        })
        .collect();
    if entries.is_empty() {
        return base;
    }
    table_from_points(n, entries).expect("distinct points")
}

/// A seeded random instance that passes the integral convexity check.
///
/// Quadratic, L♮ and separable instances are convex by construction; table
/// instances are regenerated from the seed's stream until the check passes.
pub fn random_icx(n: usize, seed: u64, family: Family) -> Result<FnOracle> {
    let limit = if family == Family::Table { 4 } else { MAX_N };
    if !(1..=limit).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n = {n} outside 1..={limit} for family {family}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::Quadratic | Family::Lnat => {
            Ok(quadratic_oracle(&random_quadratic(&mut rng, n, family == Family::Lnat))?.oracle)
        }
        Family::Separable => Ok(random_separable(&mut rng, n)),
        Family::Table => {
            for _ in 0..TABLE_RETRIES {
                let f = random_table(&mut rng, n);
                if check_integrally_convex_fn(&f)?.verdict {
                    return Ok(f);
                }
            }
            Err(Error::RetriesExhausted {
                seed,
                retries: TABLE_RETRIES,
            })
        }
    }
}
