use std::collections::BTreeSet;

use super::trees::BinTree;
use crate::error::{Error, Result};

/// A subdivision of the shifted staircase `D_n = {(i, j) : 1 <= i <= j <= n}`
/// into rectangles `R_1, ..., R_n` with `(k, k)` in `R_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectSubdivision {
    // rects[k-1] = sorted cells of R_k
    rects: Vec<Vec<(usize, usize)>>,
}

impl RectSubdivision {
    /// Validates rectangle shape, diagonal membership, disjointness and
    /// coverage.
    pub fn new(rects: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let n = rects.len();
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(n);
        for (idx, cells) in rects.into_iter().enumerate() {
            let k = idx + 1;
            let set: BTreeSet<(usize, usize)> = cells.iter().copied().collect();
            if set.len() != cells.len() {
                return Err(Error::MalformedSubdivision(format!("R_{k} repeats a cell")));
            }
            if !set.contains(&(k, k)) {
                return Err(Error::MalformedSubdivision(format!(
                    "R_{k} misses ({k},{k})"
                )));
            }
            let rows: BTreeSet<usize> = set.iter().map(|c| c.0).collect();
            let cols: BTreeSet<usize> = set.iter().map(|c| c.1).collect();
            let (r0, r1) = (*rows.first().unwrap(), *rows.last().unwrap());
            let (c0, c1) = (*cols.first().unwrap(), *cols.last().unwrap());
            if (r1 - r0 + 1) * (c1 - c0 + 1) != set.len() || r1 > c0 {
                return Err(Error::MalformedSubdivision(format!(
                    "R_{k} is not a rectangle inside the staircase"
                )));
            }
            for &(i, j) in &set {
                if i == 0 || j > n || !seen.insert((i, j)) {
                    return Err(Error::MalformedSubdivision(format!(
                        "cell ({i},{j}) out of range or covered twice"
                    )));
                }
            }
            sorted.push(set.into_iter().collect());
        }
        if seen.len() != n * (n + 1) / 2 {
            return Err(Error::MalformedSubdivision(
                "rectangles do not cover the staircase".into(),
            ));
        }
        Ok(Self { rects: sorted })
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Cells of `R_k`, sorted.
    pub fn rect(&self, k: usize) -> &[(usize, usize)] {
        &self.rects[k - 1]
    }

    pub fn rects(&self) -> &[Vec<(usize, usize)>] {
        &self.rects
    }

    /// Index `k` of the rectangle holding cell `(i, j)`.
    pub fn owner(&self, i: usize, j: usize) -> Option<usize> {
        self.rects
            .iter()
            .position(|r| r.binary_search(&(i, j)).is_ok())
            .map(|p| p + 1)
    }

    /// Text form: line `k` lists the cells of `R_k` as `i,j` separated by
    /// spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rects {
            let cells: Vec<String> = r.iter().map(|(i, j)| format!("{i},{j}")).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut rects = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut cells = Vec::new();
            for tok in line.split_whitespace() {
                let cell = tok
                    .split_once(',')
                    .and_then(|(i, j)| Some((i.parse().ok()?, j.parse().ok()?)))
                    .ok_or_else(|| {
                        Error::MalformedSubdivision(format!("line {}: bad cell `{tok}`", ln + 1))
                    })?;
                cells.push(cell);
            }
            rects.push(cells);
        }
        Self::new(rects)
    }
}

/// `R_k = {(i, j) : l_k <= i <= k <= j <= r_k}` where `[l_k, r_k]` are the
/// descendants of `k`.
pub fn tree_to_subdivision(tree: &BinTree) -> RectSubdivision {
    let rects = (1..=tree.len())
        .map(|k| {
            let (l, r) = tree.interval(k);
            (l..=k).flat_map(|i| (k..=r).map(move |j| (i, j))).collect()
        })
        .collect();
    RectSubdivision { rects }
}

/// Inverse of [`tree_to_subdivision`]. Every valid `R_k` has the form
/// `[l, k] x [k, r]`, and `[l, r]` is then the descendant interval of `k`.
pub fn subdivision_to_tree(s: &RectSubdivision) -> Result<BinTree> {
    let n = s.len();
    let intervals: Vec<(usize, usize)> = (1..=n)
        .map(|k| {
            let r = s.rect(k);
            (r.first().unwrap().0, r.last().unwrap().1)
        })
        .collect();
    let mut left = vec![None; n];
    let mut right = vec![None; n];
    let root = build(&intervals, 1, n, &mut left, &mut right)?;
    let tree = BinTree::from_children(root, left, right)?;
    if tree_to_subdivision(&tree) != *s {
        return Err(Error::MalformedSubdivision(
            "rectangles do not come from a binary tree".into(),
        ));
    }
    Ok(tree)
}

fn build(
    intervals: &[(usize, usize)],
    lo: usize,
    hi: usize,
    left: &mut [Option<usize>],
    right: &mut [Option<usize>],
) -> Result<usize> {
    let roots: Vec<usize> = (lo..=hi)
        .filter(|&k| intervals[k - 1] == (lo, hi))
        .collect();
    let &[k] = roots.as_slice() else {
        return Err(Error::MalformedSubdivision(format!(
            "{} rectangles span rows/columns [{lo}, {hi}]",
            roots.len()
        )));
    };
    if k > lo {
        left[k - 1] = Some(build(intervals, lo, k - 1, left, right)?);
    }
    if k < hi {
        right[k - 1] = Some(build(intervals, k + 1, hi, left, right)?);
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertices::trees::enumerate_trees;

    #[test]
    fn single_cell() {
        let t = enumerate_trees(1).unwrap().next().unwrap();
        let s = tree_to_subdivision(&t);
        assert_eq!(s.rects(), &[vec![(1, 1)]]);
        assert_eq!(subdivision_to_tree(&s).unwrap(), t);
    }

    #[test]
    fn left_comb() {
        // root 3, left child 2, its left child 1: intervals [1,1], [1,2], [1,3]
        let t = BinTree::from_children(3, vec![None, Some(1), Some(2)], vec![None; 3]).unwrap();
        assert_eq!(t.interval(2), (1, 2));
        let s = tree_to_subdivision(&t);
        assert_eq!(s.rect(1), &[(1, 1)]);
        assert_eq!(s.rect(2), &[(1, 2), (2, 2)]);
        assert_eq!(s.rect(3), &[(1, 3), (2, 3), (3, 3)]);
    }

    #[test]
    fn round_trips() {
        for n in 1..=6 {
            for t in enumerate_trees(n).unwrap() {
                let s = tree_to_subdivision(&t);
                RectSubdivision::new(s.rects().to_vec()).unwrap();
                assert_eq!(subdivision_to_tree(&s).unwrap(), t);
                assert_eq!(RectSubdivision::from_text(&s.to_text()).unwrap(), s);
            }
        }
    }

    #[test]
    fn malformed() {
        // R_1 takes (1,2) but R_2 claims it too
        let bad = RectSubdivision::new(vec![vec![(1, 1), (1, 2)], vec![(1, 2), (2, 2)]]);
        assert!(matches!(bad, Err(Error::MalformedSubdivision(_))));
        // missing diagonal
        let bad = RectSubdivision::new(vec![vec![(1, 2)], vec![(2, 2)]]);
        assert!(bad.is_err());
        // L-shape
        let bad = RectSubdivision::new(vec![
            vec![(1, 1)],
            vec![(2, 2)],
            vec![(1, 2), (1, 3), (2, 3), (3, 3)],
        ]);
        assert!(bad.is_err());
        assert!(RectSubdivision::from_text("1,1\n2,x\n").is_err());
    }
}
