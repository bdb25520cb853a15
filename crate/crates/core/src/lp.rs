//! Dense exact primal simplex for `min cᵀλ  s.t.  Aλ = b, λ ≥ 0`.
//!
//! Two phases with artificial variables; Bland's rule for both the entering
//! column (lowest index with negative reduced cost) and the leaving row
//! (minimum ratio, ties by lowest basic variable index), so the method
//! terminates and its output is a deterministic function of the input.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution<T> {
    pub value: T,
    /// A basic optimal solution.
    pub x: Vec<T>,
    /// Pivots performed over both phases.
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<T> {
    Optimal(LpSolution<T>),
    Infeasible,
}

impl<T> LpOutcome<T> {
    pub fn optimal(self) -> Option<LpSolution<T>> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            LpOutcome::Infeasible => None,
        }
    }
}

struct Tableau<T> {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<T>>,
    /// Reduced costs; last entry is minus the objective value.
    cost: Vec<T>,
    basis: Vec<usize>,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let rhs = self.rhs();
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for j in 0..=rhs {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].clone() - k.clone() * pivot_row[j].clone();
                }
            }
        }
        if !self.cost[c].is_zero() {
            let k = self.cost[c].clone();
            for j in 0..=rhs {
                if !pivot_row[j].is_zero() {
                    self.cost[j] = self.cost[j].clone() - k.clone() * pivot_row[j].clone();
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs Bland's rule over columns `< allowed`.
    fn optimize(&mut self, allowed: usize) -> Result<()> {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[c].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let (r, _) = best.ok_or(Error::Unbounded)?;
            self.pivot(r, c);
        }
    }
}

/// Solves `min cᵀλ s.t. Aλ = b, λ ≥ 0` exactly.
///
/// `a` is row-major with `costs.len()` columns. Infeasibility is a normal
/// outcome; an unbounded objective is reported as [`Error::Unbounded`].
pub fn lp_min<T: Scalar>(costs: &[T], a: &[Vec<T>], b: &[T]) -> Result<LpOutcome<T>> {
    let n = costs.len();
    let m = a.len();
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: row.len(),
        });
    }

    // columns: originals 0..n, artificials n..n+m, rhs at n+m
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row = vec![T::zero(); width];
        for j in 0..n {
            row[j] = if flip { -ai[j].clone() } else { ai[j].clone() };
        }
        row[n + i] = T::one();
        row[n + m] = if flip { -bi.clone() } else { bi.clone() };
        rows.push(row);
    }
    let mut cost = vec![T::zero(); width];
    for row in &rows {
        for j in 0..n {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[n + m] = cost[n + m].clone() - row[n + m].clone();
    }
    let mut t = Tableau {
        rows,
        cost,
        basis: (n..n + m).collect(),
        pivots: 0,
    };

    t.optimize(n + m)?;
    if !t.cost[n + m].is_zero() {
        return Ok(LpOutcome::Infeasible);
    }

    // drive remaining artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = vec![T::zero(); width];
    cost[..n].clone_from_slice(costs);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = costs[bv].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            if j < n || j == n + m {
                cost[j] = cost[j].clone() - cb.clone() * row[j].clone();
            }
        }
    }
    t.cost = cost;
    t.optimize(n)?;

    let mut x = vec![T::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = row[n + m].clone();
    }
    let value = -t.cost[n + m].clone();
    Ok(LpOutcome::Optimal(LpSolution {
        value,
        x,
        pivots: t.pivots,
    }))
}

/// Feasibility of `Aλ = b, λ ≥ 0`.
pub fn feasible<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Result<Option<Vec<T>>> {
    let cols = a.first().map_or(0, Vec::len);
    let zeros = vec![T::zero(); cols];
    Ok(lp_min(&zeros, a, b)?.optimal().map(|s| s.x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};
    use crate::Rational;
    use num_rational::Ratio;

    #[test]
    fn single_column() {
        let s = lp_min(&[int(5)], &[vec![int(1)]], &[int(1)])
            .unwrap()
            .optimal()
            .unwrap();
        assert_eq!(s.value, int(5));
        assert_eq!(s.x, vec![int(1)]);
    }

    #[test]
    fn picks_cheaper_diagonal() {
        // corners of the square, target (1/2, 1/2)
        let c = [int(0), int(1), int(1), int(0)];
        let a = vec![
            vec![int(0), int(0), int(1), int(1)],
            vec![int(0), int(1), int(0), int(1)],
            vec![int(1), int(1), int(1), int(1)],
        ];
        let b = [ratio(1, 2), ratio(1, 2), int(1)];
        let s = lp_min(&c, &a, &b).unwrap().optimal().unwrap();
        assert_eq!(s.value, int(0));
        assert_eq!(s.x, vec![ratio(1, 2), int(0), int(0), ratio(1, 2)]);
    }

    #[test]
    fn infeasible_is_not_an_error() {
        let a = vec![vec![int(1), int(1)]];
        assert_eq!(
            lp_min(&[int(0), int(0)], &a, &[int(-1)]).unwrap(),
            LpOutcome::Infeasible
        );
    }

    #[test]
    fn unbounded_is_reported() {
        let a = vec![vec![int(1), int(-1)]];
        assert_eq!(
            lp_min(&[int(0), int(-1)], &a, &[int(1)]),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        let s = lp_min(&[int(3), int(1)], &a, &[int(1), int(2)])
            .unwrap()
            .optimal()
            .unwrap();
        assert_eq!(s.value, int(1));
    }

    #[test]
    fn same_answer_on_machine_rationals() {
        type R = Ratio<i64>;
        let r = |n, d| R::new(n, d);
        let a = vec![
            vec![r(1, 1), r(2, 1), r(0, 1)],
            vec![r(1, 1), r(1, 1), r(1, 1)],
        ];
        let b = [r(3, 2), r(1, 1)];
        let c = [r(4, 1), r(1, 1), r(2, 1)];
        let small = lp_min(&c, &a, &b).unwrap().optimal().unwrap();

        let big = |q: &R| Rational::new((*q.numer()).into(), (*q.denom()).into());
        let a2: Vec<Vec<Rational>> = a.iter().map(|row| row.iter().map(big).collect()).collect();
        let b2: Vec<Rational> = b.iter().map(big).collect();
        let c2: Vec<Rational> = c.iter().map(big).collect();
        let large = lp_min(&c2, &a2, &b2).unwrap().optimal().unwrap();
        assert_eq!(big(&small.value), large.value);
        assert_eq!(small.x.iter().map(big).collect::<Vec<_>>(), large.x);
    }
}
