//! Reproduction bundles: each fixture id maps to a list of claims that are
//! checked exactly and reported as PASS or FAIL.

use icx_core::checkers::{
    check_integrally_convex_fn, check_integrally_convex_set, check_lnat, check_mnat, Witness,
};
use icx_core::cones::{generators, verify_hilbert, verify_hilbert_for};
use icx_core::extension::extension_value;
use icx_core::fixtures::{self, ex4_5_minimizer, Family, FixtureId};
use icx_core::minimize::{brute_force_min, evaluation_budget, minimize_proximity_scaling};
use icx_core::proximity::{
    alpha_local_minimizers, argmin, beta, beta_upper_bound, is_alpha_local_min, proximity_holds,
    FunctionClass, ProximitySpec,
};
use icx_core::scaling::{scale_fn, scale_set};
use icx_core::value::{int, ratio};
use icx_core::{FnOracle, IntBox, IntPoint, RationalPoint, Value};
use num_bigint::BigInt;

use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
}

impl Claim {
    fn new(name: impl Into<String>, pass: bool) -> Claim {
        Claim {
            name: name.into(),
            pass,
        }
    }
}

/// The ids accepted by [`repro`] without parameters.
pub const REPRO_IDS: &[&str] = &[
    "ex1.1",
    "ex3.1",
    "ex4.1",
    "ex4.2",
    "ex4.3",
    "ex4.4",
    "ex4.5",
    "remark2.2",
    "hilbert-n2",
    "hilbert-n3",
    "beta",
];

/// Runs the claims for `id`. Examples 4.1–4.3 and 4.5 take optional
/// parameters (`ex4.1:n=3,alpha=2`); without them a small grid is run.
/// Random ids (`quad:n=3,seed=5`) check convexity, minimization and
/// proximity on that instance.
pub fn repro(id: &str) -> CliResult<Vec<Claim>> {
    match id {
        "hilbert-n2" => return hilbert(2, 6),
        "hilbert-n3" => return hilbert(3, 4),
        "beta" => return beta_table(),
        _ => {}
    }
    let fixture: FixtureId = id.parse()?;
    let grid = !id.contains(':');
    match fixture {
        FixtureId::Ex1_1 => ex1_1(),
        FixtureId::Ex3_1 => ex3_1(),
        FixtureId::Ex4_4 => ex4_4(),
        FixtureId::Remark2_2 => remark2_2(),
        FixtureId::Ex4_1 { n, alpha }
        | FixtureId::Ex4_2 { n, alpha }
        | FixtureId::Ex4_3 { n, alpha } => {
            let cases: Vec<(usize, i64)> = if grid {
                vec![(2, 2), (2, 3), (3, 2), (3, 3)]
            } else {
                vec![(n, alpha)]
            };
            let mut out = Vec::new();
            for (n, alpha) in cases {
                let id = match fixture {
                    FixtureId::Ex4_1 { .. } => FixtureId::Ex4_1 { n, alpha },
                    FixtureId::Ex4_2 { .. } => FixtureId::Ex4_2 { n, alpha },
                    _ => FixtureId::Ex4_3 { n, alpha },
                };
                out.extend(tightness(id, n, alpha)?);
            }
            Ok(out)
        }
        FixtureId::Ex4_5 { m, alpha } => {
            let cases: Vec<i64> = if grid { vec![2, 3] } else { vec![alpha] };
            let m = if grid { 2 } else { m };
            let mut out = Vec::new();
            for alpha in cases {
                out.extend(ex4_5(m, alpha)?);
            }
            Ok(out)
        }
        FixtureId::Random { family, n, seed } => random(family, n, seed),
    }
}

fn p(v: &[i64]) -> IntPoint {
    IntPoint(v.to_vec())
}

fn ex1_1() -> CliResult<Vec<Claim>> {
    let s = fixtures::ex1_1_set();
    let f = FnOracle::indicator(&s)?;
    let pair = vec![p(&[0, 0, 0]), p(&[1, 1, -1])];
    let g = FnOracle::indicator(&pair)?;
    Ok(vec![
        Claim::new(
            "the 16 generator combinations give 15 distinct points",
            s.len() == 15,
        ),
        Claim::new("the indicator of S is M♮-convex", check_mnat(&f)?.verdict),
        Claim::new(
            "the indicator of S is integrally convex",
            check_integrally_convex_fn(&f)?.verdict,
        ),
        Claim::new(
            "the indicator of {(0,0,0),(1,1,-1)} is not M♮-convex",
            !check_mnat(&g)?.verdict,
        ),
        Claim::new(
            "{(0,0,0),(1,1,-1)} is an integrally convex set",
            check_integrally_convex_set(&pair)?.verdict,
        ),
        Claim::new(
            "the indicator of {(0,0,0),(1,1,-1)} is integrally convex",
            check_integrally_convex_fn(&g)?.verdict,
        ),
    ])
}

fn ex3_1() -> CliResult<Vec<Claim>> {
    let f = fixtures::ex3_1();
    let f2 = scale_fn(&f, 2)?;
    let r = check_integrally_convex_fn(&f2)?;
    let origin = p(&[0, 0, 0]);
    let far = p(&[2, 1, 1]);
    let mid = extension_value(&f2, &RationalPoint::midpoint(&origin, &far))?;
    let s = scale_set(&argmin(&f)?, 2)?;
    let expect = vec![origin.clone(), p(&[1, 0, 0]), p(&[1, 0, 1]), far.clone()];
    Ok(vec![
        Claim::new(
            "f is integrally convex",
            check_integrally_convex_fn(&f)?.verdict,
        ),
        Claim::new("f^2 is not integrally convex", !r.verdict),
        Claim::new(
            "the violated pair is (0,0,0), (2,1,1)",
            r.witness.as_ref().and_then(Witness::pair) == Some((&origin, &far)),
        ),
        Claim::new(
            "the extension of f^2 at (1,1/2,1/2) is 1/2",
            mid == Value::Finite(ratio(1, 2)),
        ),
        Claim::new(
            "(arg min f)^2 = {(0,0,0),(1,0,0),(1,0,1),(2,1,1)}",
            s == expect,
        ),
        Claim::new(
            "(arg min f)^2 is not an integrally convex set",
            !check_integrally_convex_set(&s)?.verdict,
        ),
    ])
}

fn ex4_4() -> CliResult<Vec<Claim>> {
    let f = fixtures::ex4_4();
    let spec = ProximitySpec::integrally_convex();
    let origin = IntPoint::zeros(3);
    let (bp, bv) = brute_force_min(&f)?;
    let m = minimize_proximity_scaling(&f)?;
    let out = proximity_holds(&f, &origin, 2, &spec)?;
    let best = p(&[4, 2, 2]);
    Ok(vec![
        Claim::new(
            "f is integrally convex",
            check_integrally_convex_fn(&f)?.verdict,
        ),
        Claim::new(
            "(0,0,0) is 2-local minimal",
            is_alpha_local_min(&f, &origin, 2, &spec)?.verdict,
        ),
        Claim::new(
            "brute force gives value -4 at (4,2,2)",
            bp == best && bv == Value::Finite(int(-4)),
        ),
        Claim::new(
            "proximity scaling gives value -4 at (4,2,2)",
            m.minimizer == best && m.value == bv,
        ),
        Claim::new("distance from (0,0,0) to arg min is 4", out.distance == 4),
        Claim::new("the distance exceeds n(alpha-1) = 3", out.distance > 3),
        Claim::new(
            "the distance respects beta_3(alpha-1) = 5",
            out.holds && out.bound == int(5),
        ),
    ])
}

fn remark2_2() -> CliResult<Vec<Claim>> {
    let s = vec![p(&[0, 0]), p(&[1, 0])];
    let system = |x: &IntPoint| {
        -x[0] + x[1] <= 0 && x[0] - x[1] <= 1 && x[0] + x[1] <= 1 && -x[0] - x[1] <= 0
    };
    let solutions: Vec<IntPoint> = IntBox::cube(2, -2, 2)?
        .points()
        .filter(|x| system(x))
        .collect();
    Ok(vec![
        Claim::new(
            "{(0,0),(1,0)} is an integrally convex set",
            check_integrally_convex_set(&s)?.verdict,
        ),
        Claim::new(
            "its integer points are cut out by the four inequalities",
            solutions == s,
        ),
    ])
}

fn tightness(id: FixtureId, n: usize, alpha: i64) -> CliResult<Vec<Claim>> {
    let f = fixtures::build(id)?.oracle();
    let origin = IntPoint::zeros(n);
    let (class, class_ok, name, expect) = match id {
        FixtureId::Ex4_1 { .. } => {
            let both = check_lnat(&f)?.verdict && check_mnat(&f)?.verdict;
            (
                FunctionClass::Separable,
                both,
                "L♮- and M♮-convex",
                alpha - 1,
            )
        }
        FixtureId::Ex4_2 { .. } => (
            FunctionClass::Lnat,
            check_lnat(&f)?.verdict,
            "L♮-convex",
            n as i64 * (alpha - 1),
        ),
        _ => (
            FunctionClass::Mnat,
            check_mnat(&f)?.verdict,
            "M♮-convex",
            n as i64 * (alpha - 1),
        ),
    };
    let spec = ProximitySpec::new(class);
    let local = is_alpha_local_min(&f, &origin, alpha, &spec)?.verdict;
    let full = is_alpha_local_min(&f, &origin, alpha, &ProximitySpec::integrally_convex())?.verdict;
    let out = if local {
        Some(proximity_holds(&f, &origin, alpha, &spec)?)
    } else {
        None
    };
    let tag = format!("{id}:");
    Ok(vec![
        Claim::new(format!("{tag} f is {name}"), class_ok),
        Claim::new(
            format!("{tag} 0 is alpha-local minimal for the class directions"),
            local,
        ),
        Claim::new(
            format!("{tag} 0 is alpha-local minimal for all directions"),
            full,
        ),
        Claim::new(
            format!("{tag} distance from 0 to arg min is exactly {expect}"),
            out.as_ref()
                .is_some_and(|o| o.distance == expect && o.holds),
        ),
    ])
}

fn ex4_5(m: usize, alpha: i64) -> CliResult<Vec<Claim>> {
    let f = fixtures::ex4_5(m, alpha);
    let n = 2 * m + 2;
    let coarse: Vec<IntPoint> = IntBox::cube(n, -1, 1)?
        .points()
        .map(|d| d.scaled(alpha))
        .filter(|x| f.value(x).is_finite())
        .collect();
    let star = ex4_5_minimizer(m, alpha);
    let minimizers = argmin(&f)?;
    let spec = ProximitySpec::integrally_convex();
    let origin = IntPoint::zeros(n);
    let local = is_alpha_local_min(&f, &origin, alpha, &spec)?.verdict;
    let out = proximity_holds(&f, &origin, alpha, &spec)?;
    let quad = ((n - 2) * (n - 2)) as i64 * (alpha - 1);
    let tag = format!("ex4.5:m={m},alpha={alpha}:");
    Ok(vec![
        Claim::new(
            format!("{tag} dom f meets {{-alpha,0,alpha}}^n only at 0"),
            coarse == vec![origin.clone()],
        ),
        Claim::new(format!("{tag} 0 is alpha-local minimal"), local),
        Claim::new(
            format!("{tag} the unique minimizer is {star}"),
            minimizers == vec![star.clone()],
        ),
        Claim::new(
            format!(
                "{tag} ||x*|| = m^2(alpha-1) = {}",
                (m * m) as i64 * (alpha - 1)
            ),
            star.norm_inf() == (m * m) as i64 * (alpha - 1),
        ),
        Claim::new(
            format!("{tag} distance equals (n-2)^2(alpha-1)/4"),
            quad % 4 == 0 && out.distance == quad / 4,
        ),
        Claim::new(
            format!("{tag} distance respects beta_n(alpha-1)"),
            out.holds,
        ),
    ])
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn hilbert(n: usize, radius: i64) -> CliResult<Vec<Claim>> {
    let mut out = Vec::new();
    for a in subsets(n) {
        let r = verify_hilbert(n, &a, radius)?;
        out.push(Claim::new(
            format!("B_A is a Hilbert basis on [0,{radius}]^{n} for A = {a:?}"),
            r.verdict,
        ));
    }
    let c = generators(n, &[0])?;
    let r = verify_hilbert_for(&c.without(&c.chi()), radius)?;
    out.push(Claim::new(
        "dropping chi_A for A = [0] leaves e_0 uncovered",
        r.witness
            == Some(Witness::Lattice {
                z: IntPoint::unit(n, 0),
            }),
    ));
    Ok(out)
}

fn beta_table() -> CliResult<Vec<Claim>> {
    let values = [
        int(1),
        int(2),
        int(5),
        ratio(27, 2),
        ratio(83, 2),
        ratio(585, 4),
        int(586),
    ];
    let bounds = [int(6), int(15), int(45), ratio(315, 2), int(630)];
    let mut ok_values = true;
    for (n, v) in (1..=7).zip(&values) {
        ok_values &= beta(n)? == *v;
    }
    let mut ok_bounds = true;
    for (n, v) in (3..=7).zip(&bounds) {
        ok_bounds &= beta_upper_bound(n)? == *v;
    }
    let mut ordered = true;
    for n in 3..=12 {
        ordered &= beta(n)? <= beta_upper_bound(n)?;
    }
    Ok(vec![
        Claim::new(
            "beta_1..beta_7 = 1, 2, 5, 27/2, 83/2, 585/4, 586",
            ok_values,
        ),
        Claim::new(
            "(n+1)!/2^(n-1) for n = 3..7 is 6, 15, 45, 315/2, 630",
            ok_bounds,
        ),
        Claim::new("beta_n <= (n+1)!/2^(n-1) for n = 3..12", ordered),
    ])
}

fn random(family: Family, n: usize, seed: u64) -> CliResult<Vec<Claim>> {
    let f = fixtures::random_icx(n, seed, family)?;
    let (bp, bv) = brute_force_min(&f)?;
    let run = minimize_proximity_scaling(&f)?;
    let spec = ProximitySpec::integrally_convex();
    let mut near = true;
    for alpha in [2, 4] {
        for x in alpha_local_minimizers(&f, alpha, &spec)? {
            near &= proximity_holds(&f, &x, alpha, &spec)?.holds;
        }
    }
    let budget = evaluation_budget(n, run.k_infinity);
    let tag = format!("{family}:n={n},seed={seed}:");
    Ok(vec![
        Claim::new(
            format!("{tag} f is integrally convex"),
            check_integrally_convex_fn(&f)?.verdict,
        ),
        Claim::new(
            format!("{tag} proximity scaling returns the brute-force optimum"),
            run.minimizer == bp && run.value == bv,
        ),
        Claim::new(
            format!("{tag} evaluations stay within the budget"),
            BigInt::from(run.evaluations) <= budget,
        ),
        Claim::new(
            format!("{tag} every 2- and 4-local minimizer is within beta_n(alpha-1)"),
            near,
        ),
    ])
}

/// Renders claims as `PASS name` / `FAIL name` lines.
pub fn render(claims: &[Claim]) -> String {
    claims
        .iter()
        .map(|c| format!("{} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name))
        .collect()
}
