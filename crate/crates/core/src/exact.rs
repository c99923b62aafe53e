//! Exact rational linear algebra: LP feasibility and affine rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Whether `A x = b, x >= 0` has a solution, by phase-one simplex with
/// Bland's rule over the rationals.
pub fn feasible(a: &[Vec<i64>], b: &[i64]) -> bool {
    let rows = a.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return true;
    }
    let vars = a[0].len();
    let width = vars + rows + 1;
    let rhs = width - 1;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i] < 0;
        let sign = |x: i64| if flip { rat(-x) } else { rat(x) };
        let mut line: Vec<BigRational> = row.iter().map(|&x| sign(x)).collect();
        line.extend((0..rows).map(|k| {
            if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        line.push(sign(b[i]));
        tab.push(line);
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();
    // reduced costs of the phase-one objective (sum of artificials)
    let mut obj: Vec<BigRational> = (0..width)
        .map(|j| {
            if (vars..vars + rows).contains(&j) {
                BigRational::zero()
            } else {
                -tab.iter().map(|line| line[j].clone()).sum::<BigRational>()
            }
        })
        .collect();
    while let Some(enter) = (0..vars + rows).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, line) in tab.iter().enumerate() {
            if line[enter].is_positive() {
                let ratio = &line[rhs] / &line[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // unbounded direction cannot occur in phase one
            unreachable!("phase-one objective is bounded below by zero");
        };
        let pivot = tab[pr][enter].clone();
        for x in tab[pr].iter_mut() {
            *x /= &pivot;
        }
        let prow = tab[pr].clone();
        for (i, line) in tab.iter_mut().enumerate() {
            if i != pr && !line[enter].is_zero() {
                let f = line[enter].clone();
                for (x, p) in line.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        basis[pr] = enter;
    }
    obj[rhs].is_zero()
}

/// Whether `p` is a convex combination of `others`.
pub fn in_convex_hull(p: &[i64], others: &[&[i64]]) -> bool {
    if others.is_empty() {
        return false;
    }
    let d = p.len();
    let mut a: Vec<Vec<i64>> = (0..d)
        .map(|k| others.iter().map(|q| q[k]).collect())
        .collect();
    a.push(vec![1; others.len()]);
    let mut b = p.to_vec();
    b.push(1);
    feasible(&a, &b)
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let prow = m[rank].clone();
        for line in m.iter_mut().skip(rank + 1) {
            if !line[col].is_zero() {
                let f = &line[col] / &prow[col];
                for (x, p) in line.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the affine hull; `None` for the empty set.
pub fn affine_dimension<'a, I>(points: I) -> Option<usize>
where
    I: IntoIterator<Item = &'a Vec<i64>>,
{
    let mut it = points.into_iter();
    let base = it.next()?;
    let diffs: Vec<Vec<i64>> = it
        .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    Some(rank(&diffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_is_inside() {
        let a: &[i64] = &[0, 2];
        let b: &[i64] = &[2, 0];
        assert!(in_convex_hull(&[1, 1], &[a, b]));
        assert!(!in_convex_hull(&[0, 2], &[&[1, 1], b]));
        assert!(!in_convex_hull(&[3, -1], &[a, b]));
    }

    #[test]
    fn negative_rhs_rows() {
        // x1 - x2 = -1, x1 + x2 = 3 -> x = (1, 2)
        assert!(feasible(&[vec![1, -1], vec![1, 1]], &[-1, 3]));
        // x1 + x2 = -1 has no nonnegative solution
        assert!(!feasible(&[vec![1, 1]], &[-1]));
    }

    #[test]
    fn degenerate_pivots_terminate() {
        // many identical columns
        let p: &[i64] = &[1, 1, 1];
        let pts: Vec<&[i64]> = vec![p; 6];
        assert!(in_convex_hull(&[1, 1, 1], &pts));
        assert!(!in_convex_hull(&[1, 1, 2], &pts));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(affine_dimension(&[vec![1, 1]]), Some(0));
        assert_eq!(
            affine_dimension(&[vec![0, 2], vec![1, 1], vec![2, 0]]),
            Some(1)
        );
        assert_eq!(affine_dimension(std::iter::empty()), None);
    }
}
