//! The generator sets `B_A`, their integer cones `C_A` and real cones `C̃_A`,
//! and an exhaustive check of `C_A = C̃_A ∩ ℤⁿ` on boxes.
//!
//! Subsets `A ⊆ {0, …, n−1}` are 0-based.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::checkers::{CheckReport, ClassTag, Witness};
use crate::error::{Error, Result};
use crate::lp::feasible;
use crate::point::{IntBox, IntPoint, RationalPoint};
use crate::Rational;

const MAX_DIM: usize = 4;
const MAX_RADIUS: i64 = 8;

/// `B_A` for a nonempty `A`, deduplicated and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    pub n: usize,
    pub a: Vec<usize>,
    pub generators: Vec<IntPoint>,
}

impl ConeSpec {
    /// A cone over an explicit generator list, for experiments with altered
    /// sets. Generators must be nonnegative.
    pub fn from_generators(n: usize, a: Vec<usize>, generators: Vec<IntPoint>) -> Result<Self> {
        for g in &generators {
            g.check_dim(n)?;
            if g.coords().iter().any(|&v| v < 0) {
                return Err(Error::InvalidArgument(format!(
                    "generator {g} has a negative entry"
                )));
            }
        }
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        Ok(ConeSpec { n, a, generators })
    }

    /// The same cone with `g` removed from the generators.
    pub fn without(&self, g: &IntPoint) -> ConeSpec {
        ConeSpec {
            n: self.n,
            a: self.a.clone(),
            generators: self
                .generators
                .iter()
                .filter(|h| *h != g)
                .cloned()
                .collect(),
        }
    }

    pub fn nonzero_generators(&self) -> impl Iterator<Item = &IntPoint> {
        self.generators
            .iter()
            .filter(|g| g.coords().iter().any(|&v| v != 0))
    }

    /// `χ_A`.
    pub fn chi(&self) -> IntPoint {
        IntPoint::indicator(self.n, &self.a)
    }
}

/// `B_A = {χ_A ± eⁱ : i ∈ A} ∪ {χ_A + eⁱ : i ∉ A} ∪ {χ_A}`.
pub fn generators(n: usize, a: &[usize]) -> Result<ConeSpec> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if a.is_empty() {
        return Err(Error::InvalidArgument("A must be nonempty".into()));
    }
    let mut set = a.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&i) = set.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidArgument(format!(
            "index {i} out of range for n = {n}"
        )));
    }
    let chi = IntPoint::indicator(n, &set);
    let mut gens = vec![chi.clone()];
    for i in 0..n {
        let e = IntPoint::unit(n, i);
        gens.push(&chi + &e);
        if set.contains(&i) {
            gens.push(&chi - &e);
        }
    }
    ConeSpec::from_generators(n, set, gens)
}

/// Whether `z` is a nonnegative integer combination of the generators.
pub fn in_integer_cone(spec: &ConeSpec, z: &IntPoint) -> bool {
    let gens: Vec<&IntPoint> = spec.nonzero_generators().collect();
    let mut memo = HashMap::new();
    reachable(&gens, z, &mut memo)
}

fn reachable(gens: &[&IntPoint], z: &IntPoint, memo: &mut HashMap<IntPoint, bool>) -> bool {
    if z.coords().iter().any(|&v| v < 0) {
        return false;
    }
    if z.coords().iter().all(|&v| v == 0) {
        return true;
    }
    if let Some(&r) = memo.get(z) {
        return r;
    }
    let r = gens.iter().any(|g| reachable(gens, &(z - g), memo));
    memo.insert(z.clone(), r);
    r
}

fn column_matrix(gens: &[&IntPoint], n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            gens.iter()
                .map(|g| Rational::from_integer(BigInt::from(g[i])))
                .collect()
        })
        .collect()
}

/// Whether `z` is a nonnegative real combination of the generators.
pub fn in_real_cone(spec: &ConeSpec, z: &RationalPoint) -> Result<bool> {
    if z.dim() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            got: z.dim(),
        });
    }
    let gens: Vec<&IntPoint> = spec.nonzero_generators().collect();
    if gens.is_empty() {
        return Ok(z.coords().iter().all(Zero::is_zero));
    }
    Ok(feasible(&column_matrix(&gens, spec.n), z.coords())?.is_some())
}

/// Checks `C_A = C̃_A ∩ ℤⁿ` on `[0, radius]ⁿ` for the standard `B_A`.
pub fn verify_hilbert(n: usize, a: &[usize], radius: i64) -> Result<CheckReport> {
    verify_hilbert_for(&generators(n, a)?, radius)
}

/// Checks `C = C̃ ∩ ℤⁿ` on `[0, radius]ⁿ` for any generator list; the
/// witness is the first lattice point of the real cone missing from the
/// integer cone.
pub fn verify_hilbert_for(spec: &ConeSpec, radius: i64) -> Result<CheckReport> {
    if spec.n > MAX_DIM || !(0..=MAX_RADIUS).contains(&radius) {
        return Err(Error::Unsupported(format!(
            "Hilbert check with n = {}, radius {radius} (limits {MAX_DIM}, {MAX_RADIUS})",
            spec.n
        )));
    }
    let points: Vec<IntPoint> = IntBox::cube(spec.n, 0, radius)?.points().collect();
    let witness = points.par_iter().find_map_first(|z| {
        let real = in_real_cone(spec, &z.to_rational()).expect("dimension agrees");
        (real && !in_integer_cone(spec, z)).then(|| Witness::Lattice { z: z.clone() })
    });
    Ok(CheckReport::from_witness(ClassTag::HilbertBasis, witness))
}

/// The integer points of `F = {Σ c_g g : 0 ≤ c_g ≤ 1}` over the nonzero
/// generators, sorted.
pub fn fundamental_points(spec: &ConeSpec) -> Result<Vec<IntPoint>> {
    let gens: Vec<&IntPoint> = spec.nonzero_generators().collect();
    let k = gens.len();
    let n = spec.n;
    let top: Vec<i64> = (0..n).map(|i| gens.iter().map(|g| g[i]).sum()).collect();
    let bbox = IntBox::new(IntPoint::zeros(n), IntPoint(top))?;
    // columns: c_1..c_k, s_1..s_k with c_g + s_g = 1
    let mut a: Vec<Vec<Rational>> = column_matrix(&gens, n)
        .into_iter()
        .map(|mut row| {
            row.extend(std::iter::repeat_n(Rational::zero(), k));
            row
        })
        .collect();
    for g in 0..k {
        let mut row = vec![Rational::zero(); 2 * k];
        row[g] = Rational::one();
        row[k + g] = Rational::one();
        a.push(row);
    }
    let points: Vec<IntPoint> = bbox.points().collect();
    points
        .into_par_iter()
        .filter_map(|z| {
            let mut b: Vec<Rational> = z.to_rational().coords().to_vec();
            b.extend(std::iter::repeat_n(Rational::one(), k));
            match feasible(&a, &b) {
                Ok(Some(_)) => Some(Ok(z)),
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::ratio;

    fn pts(v: &[&[i64]]) -> Vec<IntPoint> {
        let mut out: Vec<IntPoint> = v.iter().map(|p| IntPoint(p.to_vec())).collect();
        out.sort();
        out
    }

    #[test]
    fn generator_lists() {
        assert_eq!(
            generators(2, &[0]).unwrap().generators,
            pts(&[&[0, 0], &[1, 0], &[1, 1], &[2, 0]])
        );
        assert_eq!(
            generators(2, &[0, 1]).unwrap().generators,
            pts(&[&[0, 1], &[1, 0], &[1, 1], &[1, 2], &[2, 1]])
        );
        let one = generators(1, &[0]).unwrap();
        assert_eq!(
            one.nonzero_generators().cloned().collect::<Vec<_>>(),
            pts(&[&[1], &[2]])
        );
        assert!(generators(2, &[]).is_err());
        assert!(generators(2, &[2]).is_err());
    }

    #[test]
    fn membership() {
        let c = generators(2, &[0]).unwrap();
        assert!(in_integer_cone(&c, &IntPoint::zeros(2)));
        assert!(!in_integer_cone(&c, &[1, 2].into()));
        assert!(in_integer_cone(&c, &[5, 3].into()));
        assert!(!in_integer_cone(&c, &[-1, 0].into()));
        assert!(in_real_cone(&c, &RationalPoint(vec![ratio(3, 2), ratio(3, 4)])).unwrap());
        assert!(!in_real_cone(&c, &RationalPoint(vec![ratio(1, 2), ratio(3, 4)])).unwrap());
        assert!(in_real_cone(&c, &IntPoint::zeros(2).to_rational()).unwrap());
    }

    #[test]
    fn small_hilbert_checks() {
        assert!(verify_hilbert(2, &[0], 6).unwrap().verdict);
        assert!(verify_hilbert(2, &[0, 1], 6).unwrap().verdict);
        assert!(verify_hilbert(5, &[0], 2).is_err());
        assert!(verify_hilbert(2, &[0], 9).is_err());
    }

    #[test]
    fn dropping_chi_breaks_the_basis() {
        let c = generators(2, &[0]).unwrap();
        let r = verify_hilbert_for(&c.without(&c.chi()), 6).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness, Some(Witness::Lattice { z: [1, 0].into() }));
    }

    #[test]
    fn fundamental_points_are_integer_combinations() {
        for a in [vec![0], vec![0, 1]] {
            let c = generators(2, &a).unwrap();
            let f = fundamental_points(&c).unwrap();
            assert!(f.contains(&IntPoint::zeros(2)));
            assert!(f.iter().all(|z| in_integer_cone(&c, z)));
        }
    }
}
