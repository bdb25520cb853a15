//! Small exact integer linear algebra for dimension ≤ a handful.

use num_integer::Integer;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Generalized cross product of `n − 1` vectors in `ℤⁿ`: the vector of signed
/// maximal minors, orthogonal to every row. Zero iff the rows are dependent.
pub fn cross(rows: &[Vec<i128>], n: usize) -> Vec<i128> {
    debug_assert_eq!(rows.len() + 1, n);
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Divides by the gcd of the entries (no-op on the zero vector).
pub fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Solves the square system `M x = r` by Cramer's rule. Returns
/// `(numerators, denominator)` with a positive denominator, or `None` if
/// `M` is singular.
pub fn cramer(m: &[Vec<i128>], r: &[i128]) -> Option<(Vec<i128>, i128)> {
    let d = det(m);
    if d == 0 {
        return None;
    }
    let n = m.len();
    let mut nums = Vec::with_capacity(n);
    for j in 0..n {
        let mj: Vec<Vec<i128>> = m
            .iter()
            .zip(r)
            .map(|(row, ri)| {
                let mut row = row.clone();
                row[j] = *ri;
                row
            })
            .collect();
        nums.push(det(&mj));
    }
    if d < 0 {
        Some((nums.into_iter().map(|x| -x).collect(), -d))
    } else {
        Some((nums, d))
    }
}

/// Integer basis of `{v : rows · v = 0}`.
pub fn nullspace(rows: &[Vec<i128>], n: usize) -> Vec<Vec<i128>> {
    // reduced row echelon form over the integers, each row kept primitive
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| *x != 0))
        .cloned()
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in 0..n {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                primitive(&mut a[i]);
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            // v_f = L (common multiple of pivots), v_p = -a[p][f] * L / a[p][p]
            let l = pivots
                .iter()
                .enumerate()
                .fold(1i128, |l, (i, &c)| l.lcm(&a[i][c].abs()));
            let mut v = vec![0i128; n];
            v[f] = l;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][f] * (l / a[i][c]);
            }
            primitive(&mut v);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![2, 1], vec![1, 2]]), 3);
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(det(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]]), 0);
        assert_eq!(
            det(&[
                vec![2, -1, 0, 3],
                vec![1, 1, 1, 1],
                vec![0, 2, -2, 1],
                vec![3, 0, 1, -1]
            ]),
            50
        );
    }

    #[test]
    fn cross_is_orthogonal() {
        let rows = vec![vec![1, 2, 0, 1], vec![0, 1, 1, -1], vec![2, 0, 1, 3]];
        let c = cross(&rows, 4);
        assert!(c.iter().any(|x| *x != 0));
        for r in &rows {
            assert_eq!(r.iter().zip(&c).map(|(a, b)| a * b).sum::<i128>(), 0);
        }
        assert_eq!(cross(&[], 1), vec![1]);
    }

    #[test]
    fn nullspace_dimensions() {
        let ns = nullspace(&[vec![1, 1, -1]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(v[0] + v[1] - v[2], 0);
        }
        assert_eq!(nullspace(&[], 2).len(), 2);
        assert!(nullspace(&[vec![1, 0], vec![0, 3]], 2).is_empty());
    }

    #[test]
    fn cramer_solves() {
        let (x, d) = cramer(&[vec![2, 1], vec![1, 3]], &[3, 5]).unwrap();
        assert_eq!((x, d), (vec![4, 7], 5));
        assert!(cramer(&[vec![1, 1], vec![2, 2]], &[1, 2]).is_none());
    }
}
