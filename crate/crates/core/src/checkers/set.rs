//! Integral convexity of finite sets via the unit-cell criterion
//! `conv(S) ∩ C = conv(S ∩ C)` for every unit cell `C`.

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use super::{CheckReport, ClassTag, Witness};
use crate::error::{Error, Result};
use crate::linalg::{cramer, cross, nullspace, primitive};
use crate::lp::feasible;
use crate::point::{IntBox, IntPoint, RationalPoint};
use crate::Rational;

const MAX_DIM: usize = 4;

/// `a·x ≤ b` over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Halfspace {
    a: Vec<i128>,
    b: i128,
}

/// Decides whether the finite set `s` is integrally convex.
///
/// The witness is a vertex of `conv(S) ∩ C` outside `conv(S ∩ C)` for the
/// lexicographically first failing cell `C`, smallest vertex first.
pub fn check_integrally_convex_set(s: &[IntPoint]) -> Result<CheckReport> {
    let first = s.first().ok_or(Error::EmptySet)?;
    let n = first.dim();
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    for p in s {
        p.check_dim(n)?;
    }
    if n > MAX_DIM {
        return Err(Error::Unsupported(format!(
            "set check in dimension {n} (limit {MAX_DIM})"
        )));
    }
    let mut pts: Vec<IntPoint> = s.to_vec();
    pts.sort();
    pts.dedup();
    let bbox = IntBox::hull(&pts).expect("nonempty");
    if pts.len() == 1 || pts.len() as u128 == bbox.len() {
        return Ok(CheckReport::pass(ClassTag::IntegrallyConvexSet));
    }

    let members: HashSet<&IntPoint> = pts.iter().collect();
    let (equalities, facets) = describe_hull(&pts, &members);

    let cells = cell_corners(&bbox);
    let witness = cells.par_iter().find_map_first(|corner| {
        check_cell(n, corner, &bbox, &pts, &members, &equalities, &facets).map(|point| {
            Witness::Cell {
                cell: corner.clone(),
                point,
            }
        })
    });
    Ok(CheckReport::from_witness(
        ClassTag::IntegrallyConvexSet,
        witness,
    ))
}

fn to_i128(p: &IntPoint) -> Vec<i128> {
    p.coords().iter().map(|&v| v as i128).collect()
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Equalities `c·x = c·p0` of the affine hull and the facet inequalities of
/// `conv(S)` relative to it.
fn describe_hull(
    pts: &[IntPoint],
    members: &HashSet<&IntPoint>,
) -> (Vec<Halfspace>, Vec<Halfspace>) {
    let n = pts[0].dim();
    let p0 = to_i128(&pts[0]);
    let diffs: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| to_i128(p).iter().zip(&p0).map(|(a, b)| a - b).collect())
        .collect();
    let normals = nullspace(&diffs, n);
    let equalities: Vec<Halfspace> = normals
        .iter()
        .map(|c| Halfspace {
            a: c.clone(),
            b: dot(c, &p0),
        })
        .collect();
    let d = n - normals.len();

    // a point with p + e, p − e both in S (e a unit-cube step) is not a vertex
    let steps = crate::point::unit_directions(n);
    let candidates: Vec<Vec<i128>> = pts
        .iter()
        .filter(|p| {
            !steps.iter().any(|e| {
                e.iter().any(|&v| v != 0)
                    && members.contains(&p.offset(e, 1))
                    && members.contains(&p.offset(e, -1))
            })
        })
        .map(to_i128)
        .collect();
    let all: Vec<Vec<i128>> = pts.iter().map(to_i128).collect();

    let mut facets: Vec<Halfspace> = Vec::new();
    let mut seen: HashSet<Halfspace> = HashSet::new();
    for combo in candidates.iter().combinations(d) {
        let base = combo[0];
        let mut rows: Vec<Vec<i128>> = combo[1..]
            .iter()
            .map(|q| q.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        rows.extend(normals.iter().cloned());
        let mut a = cross(&rows, n);
        if a.iter().all(|&v| v == 0) {
            continue;
        }
        primitive(&mut a);
        let b = dot(&a, base);
        let (lo, hi) = all.iter().fold((i128::MAX, i128::MIN), |(lo, hi), p| {
            let v = dot(&a, p);
            (lo.min(v), hi.max(v))
        });
        let h = if hi == b {
            Halfspace { a, b }
        } else if lo == b {
            Halfspace {
                a: a.iter().map(|v| -v).collect(),
                b: -b,
            }
        } else {
            continue;
        };
        if seen.insert(h.clone()) {
            facets.push(h);
        }
    }
    (equalities, facets)
}

/// Lower corners of the unit cells meeting the box, lexicographically.
fn cell_corners(bbox: &IntBox) -> Vec<IntPoint> {
    let hi: Vec<i64> = bbox
        .lower()
        .coords()
        .iter()
        .zip(bbox.upper().coords())
        .map(|(&l, &u)| if u > l { u - 1 } else { l })
        .collect();
    IntBox::new(bbox.lower().clone(), IntPoint(hi))
        .expect("valid")
        .points()
        .collect()
}

/// Returns the smallest vertex of `conv(S) ∩ C` outside `conv(S ∩ C)`.
#[allow(clippy::too_many_arguments)]
fn check_cell(
    n: usize,
    corner: &IntPoint,
    bbox: &IntBox,
    pts: &[IntPoint],
    members: &HashSet<&IntPoint>,
    equalities: &[Halfspace],
    facets: &[Halfspace],
) -> Option<RationalPoint> {
    let lo: Vec<i128> = to_i128(corner);
    let hi: Vec<i128> = (0..n)
        .map(|i| {
            if bbox.upper()[i] > bbox.lower()[i] {
                lo[i] + 1
            } else {
                lo[i]
            }
        })
        .collect();

    let local: Vec<&IntPoint> = pts
        .iter()
        .filter(|p| (0..n).all(|i| (p[i] as i128) >= lo[i] && (p[i] as i128) <= hi[i]))
        .collect();
    let corners = 1usize << (0..n).filter(|&i| hi[i] > lo[i]).count();
    if local.len() == corners {
        return None;
    }

    // facets that cut the cell; a facet missing it entirely empties the cell
    let mut cuts: Vec<&Halfspace> = Vec::new();
    for h in facets {
        let (mut min, mut max) = (0i128, 0i128);
        for i in 0..n {
            let (x, y) = (h.a[i] * lo[i], h.a[i] * hi[i]);
            min += x.min(y);
            max += x.max(y);
        }
        if min > h.b {
            return None;
        }
        if max > h.b {
            cuts.push(h);
        }
    }
    for e in equalities {
        let (mut min, mut max) = (0i128, 0i128);
        for i in 0..n {
            let (x, y) = (e.a[i] * lo[i], e.a[i] * hi[i]);
            min += x.min(y);
            max += x.max(y);
        }
        if e.b < min || e.b > max {
            return None;
        }
    }

    // candidate tight rows: cuts and the cell faces
    let mut tight: Vec<Halfspace> = cuts.iter().map(|h| (*h).clone()).collect();
    for i in 0..n {
        let mut unit = vec![0i128; n];
        unit[i] = 1;
        tight.push(Halfspace {
            a: unit.clone(),
            b: hi[i],
        });
        if hi[i] > lo[i] {
            tight.push(Halfspace {
                a: unit.iter().map(|v| -v).collect(),
                b: -lo[i],
            });
        }
    }

    let inside = |nums: &[i128], den: i128| {
        (0..n).all(|i| nums[i] >= lo[i] * den && nums[i] <= hi[i] * den)
            && cuts.iter().all(|h| dot(&h.a, nums) <= h.b * den)
    };

    let k = n - equalities.len();
    let mut vertices: Vec<RationalPoint> = Vec::new();
    let mut seen: HashSet<(Vec<i128>, i128)> = HashSet::new();
    for combo in tight.iter().combinations(k) {
        let mut m: Vec<Vec<i128>> = equalities.iter().map(|e| e.a.clone()).collect();
        let mut r: Vec<i128> = equalities.iter().map(|e| e.b).collect();
        for h in &combo {
            m.push(h.a.clone());
            r.push(h.b);
        }
        let Some((mut nums, mut den)) = cramer(&m, &r) else {
            continue;
        };
        if !inside(&nums, den) {
            continue;
        }
        let mut all: Vec<i128> = nums.clone();
        all.push(den);
        let mut g = all.clone();
        primitive(&mut g);
        den = g[n];
        nums.copy_from_slice(&g[..n]);
        if !seen.insert((nums.clone(), den)) {
            continue;
        }
        vertices.push(RationalPoint(
            nums.iter()
                .map(|&v| Rational::new(BigInt::from(v), BigInt::from(den)))
                .collect(),
        ));
    }
    vertices.sort();

    vertices
        .into_iter()
        .find(|v| !in_local_hull(v, &local, members))
}

fn in_local_hull(v: &RationalPoint, local: &[&IntPoint], members: &HashSet<&IntPoint>) -> bool {
    if let Some(p) = v.to_int() {
        return members.contains(&p);
    }
    if local.is_empty() {
        return false;
    }
    let n = v.dim();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            local
                .iter()
                .map(|p| Rational::from_integer(BigInt::from(p[i])))
                .collect()
        })
        .collect();
    a.push(vec![Rational::from_integer(1.into()); local.len()]);
    let mut b: Vec<Rational> = v.coords().to_vec();
    b.push(Rational::from_integer(1.into()));
    feasible(&a, &b).expect("well-formed system").is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[&[i64]]) -> Vec<IntPoint> {
        v.iter().map(|p| IntPoint(p.to_vec())).collect()
    }

    fn verdict(v: &[&[i64]]) -> bool {
        check_integrally_convex_set(&set(v)).unwrap().verdict
    }

    #[test]
    fn small_sets() {
        assert!(verdict(&[&[0, 0], &[1, 0]]));
        assert!(verdict(&[&[0, 0], &[1, 1]]));
        assert!(!verdict(&[&[0, 0], &[2, 1]]));
        assert!(verdict(&[&[0, 0], &[1, 0], &[1, 1], &[2, 1]]));
        assert!(!verdict(&[&[0, 0], &[2, 0]]));
        assert!(verdict(&[&[0, 0, 0], &[1, 1, -1]]));
    }

    #[test]
    fn scaled_argmin_fails_with_cell_witness() {
        let r =
            check_integrally_convex_set(&set(&[&[0, 0, 0], &[1, 0, 0], &[1, 0, 1], &[2, 1, 1]]))
                .unwrap();
        assert!(!r.verdict);
        let Some(Witness::Cell { cell, point }) = r.witness else {
            panic!("cell witness")
        };
        assert_eq!(point.dim(), 3);
        // the witness lies in the cell and in conv(S), and no point of S
        // in the cell reproduces it
        for i in 0..3 {
            assert!(point.coords()[i] >= Rational::from_integer(cell[i].into()));
            assert!(point.coords()[i] <= Rational::from_integer((cell[i] + 1).into()));
        }
        assert!(!point.is_integral());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(check_integrally_convex_set(&[]), Err(Error::EmptySet));
        assert!(matches!(
            check_integrally_convex_set(&[IntPoint::zeros(5)]),
            Err(Error::Unsupported(_))
        ));
        assert!(check_integrally_convex_set(&[IntPoint::zeros(2), IntPoint::zeros(3)]).is_err());
    }

    #[test]
    fn full_boxes_and_holes() {
        let bx: Vec<IntPoint> = IntBox::cube(3, 0, 2).unwrap().points().collect();
        assert!(check_integrally_convex_set(&bx).unwrap().verdict);
        let holed: Vec<IntPoint> = bx
            .iter()
            .filter(|p| **p != IntPoint::from([1, 1, 1]))
            .cloned()
            .collect();
        let r = check_integrally_convex_set(&holed).unwrap();
        assert!(!r.verdict);
    }
}
