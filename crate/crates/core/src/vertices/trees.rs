use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_trees`].
pub const MAX_TREE_NODES: usize = 18;

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> u64 {
    // C_{k+1} = C_k * 2(2k+1) / (k+2), exact at every step
    (0..n as u64).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// A plane binary tree on `1..=n` with the binary search labelling: every
/// left descendant of `k` is smaller than `k`, every right descendant larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinTree {
    root: usize,
    // indexed by label - 1
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    interval: Vec<(usize, usize)>,
}

impl BinTree {
    /// Builds from child links (labels 1-based) and checks the labelling.
    pub fn from_children(
        root: usize,
        left: Vec<Option<usize>>,
        right: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = left.len();
        if right.len() != n || root == 0 || root > n {
            return Err(Error::MalformedSubdivision(
                "inconsistent tree links".into(),
            ));
        }
        let mut tree = Self {
            root,
            left,
            right,
            interval: vec![(0, 0); n],
        };
        let mut seen = vec![false; n];
        tree.fill_intervals(root, &mut seen)?;
        if seen.iter().any(|s| !s) {
            return Err(Error::MalformedSubdivision(
                "tree does not reach every label".into(),
            ));
        }
        Ok(tree)
    }

    fn fill_intervals(&mut self, k: usize, seen: &mut [bool]) -> Result<(usize, usize)> {
        if k == 0 || k > seen.len() || seen[k - 1] {
            return Err(Error::MalformedSubdivision(format!(
                "label {k} repeated or out of range"
            )));
        }
        seen[k - 1] = true;
        let mut lo = k;
        let mut hi = k;
        if let Some(l) = self.left[k - 1] {
            let (a, b) = self.fill_intervals(l, seen)?;
            if b + 1 != k {
                return Err(Error::MalformedSubdivision(format!(
                    "left subtree of {k} is not [{a}, {}]",
                    k - 1
                )));
            }
            lo = a;
        }
        if let Some(r) = self.right[k - 1] {
            let (a, b) = self.fill_intervals(r, seen)?;
            if a != k + 1 {
                return Err(Error::MalformedSubdivision(format!(
                    "right subtree of {k} is not [{}, {b}]",
                    k + 1
                )));
            }
            hi = b;
        }
        self.interval[k - 1] = (lo, hi);
        Ok((lo, hi))
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn left(&self, k: usize) -> Option<usize> {
        self.left[k - 1]
    }

    pub fn right(&self, k: usize) -> Option<usize> {
        self.right[k - 1]
    }

    /// `[l_k, r_k]`, the labels of `k` and its descendants.
    pub fn interval(&self, k: usize) -> (usize, usize) {
        self.interval[k - 1]
    }

    /// Nested-parentheses rendering, e.g. `(1 2 (3))` has root 2.
    pub fn to_string_compact(&self) -> String {
        fn go(t: &BinTree, k: Option<usize>, out: &mut String) {
            if let Some(k) = k {
                out.push('(');
                go(t, t.left(k), out);
                out.push_str(&k.to_string());
                go(t, t.right(k), out);
                out.push(')');
            }
        }
        let mut s = String::new();
        go(self, Some(self.root), &mut s);
        s
    }
}

/// Streams every binary-search-labelled tree on `1..=n`, `C_n` of them.
///
/// Trees are produced by interval recursion (root `k`, then the trees on
/// `[1, k-1]` and `[k+1, n]`); each is unranked from its index, so the stream
/// needs no stack of partial trees.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = BinTree>> {
    if n == 0 || n > MAX_TREE_NODES {
        return Err(Error::DimensionTooLarge {
            dim: n,
            cap: MAX_TREE_NODES,
        });
    }
    Ok((0..catalan(n)).map(move |m| unrank_tree(n, m)))
}

/// The `m`-th tree on `1..=n` in the order of [`enumerate_trees`].
pub fn unrank_tree(n: usize, m: u64) -> BinTree {
    let mut tree = BinTree {
        root: 0,
        left: vec![None; n],
        right: vec![None; n],
        interval: vec![(0, 0); n],
    };
    tree.root = unrank(&mut tree, 1, n, m).expect("n >= 1");
    tree
}

fn unrank(tree: &mut BinTree, lo: usize, hi: usize, mut m: u64) -> Option<usize> {
    if lo > hi {
        return None;
    }
    for k in lo..=hi {
        let right_count = catalan(hi - k);
        let count = catalan(k - lo) * right_count;
        if m < count {
            tree.interval[k - 1] = (lo, hi);
            tree.left[k - 1] = unrank(tree, lo, k - 1, m / right_count);
            tree.right[k - 1] = unrank(tree, k + 1, hi, m % right_count);
            return Some(k);
        }
        m -= count;
    }
    unreachable!("rank {m} out of range for [{lo}, {hi}]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn catalan_numbers() {
        let expect = [1, 1, 2, 5, 14, 42, 132, 429];
        for (n, &c) in expect.iter().enumerate() {
            assert_eq!(catalan(n), c);
        }
        assert_eq!(catalan(18), 477_638_700);
    }

    #[test]
    fn counts_and_distinctness() {
        for n in 1..=7 {
            let trees: Vec<_> = enumerate_trees(n).unwrap().collect();
            assert_eq!(trees.len() as u64, catalan(n));
            let unique: HashSet<_> = trees.iter().cloned().collect();
            assert_eq!(unique.len(), trees.len());
            for t in &trees {
                // relabelling through from_children must agree
                let again =
                    BinTree::from_children(t.root, t.left.clone(), t.right.clone()).unwrap();
                assert_eq!(&again, t);
                assert_eq!(t.interval(t.root()), (1, n));
            }
        }
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(19).is_err());
    }

    #[test]
    fn first_trees_of_three() {
        let names: Vec<String> = enumerate_trees(3)
            .unwrap()
            .map(|t| t.to_string_compact())
            .collect();
        assert_eq!(
            names,
            [
                "(1(2(3)))",
                "(1((2)3))",
                "((1)2(3))",
                "((1(2))3)",
                "(((1)2)3)"
            ]
        );
    }

    #[test]
    fn rejects_bad_labelling() {
        // 1 as the right child of 2 breaks the search order
        let err = BinTree::from_children(2, vec![None, None], vec![None, Some(1)]);
        assert!(err.is_err());
    }
}
