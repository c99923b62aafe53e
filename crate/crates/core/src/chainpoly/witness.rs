use std::collections::BTreeMap;

use super::{decompose_lattice_point, ChainData, GPerm};
use crate::error::{Error, Result};
use crate::poset::LinearExtension;

/// A partition `I_1, ..., I_{r+1}` of the padded poset whose prefix unions are
/// order ideals, with `|I_k| = t_k`, and a linear extension listing the parts
/// in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    parts: Vec<usize>,
    extension: LinearExtension,
    switches: usize,
}

impl Witness {
    /// Part index `k` (1-based) of element `p`.
    pub fn part(&self, p: usize) -> usize {
        self.parts[p]
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Element id to part index.
    pub fn assignment(&self, cd: &ChainData) -> BTreeMap<String, usize> {
        self.parts
            .iter()
            .enumerate()
            .map(|(p, &k)| (cd.padded().id(p).to_string(), k))
            .collect()
    }

    pub fn extension(&self) -> &LinearExtension {
        &self.extension
    }

    /// Number of inversion switches performed.
    pub fn switches(&self) -> usize {
        self.switches
    }
}

/// Pairs `(x, y)` with `x < y` but `part(x) > part(y)`.
fn inversions(cd: &ChainData, parts: &[usize]) -> Vec<(usize, usize)> {
    let p = cd.padded();
    let n = p.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if parts[x] > parts[y] && p.lt(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Builds a witness for the lattice point `t` of `N(P, Q)`.
///
/// The point is split into integer points of the summands, each block
/// `B(i, j)` is cut into consecutive runs of a fixed linear order of the
/// block, and inversions are then switched away. Each round considers the
/// inversions whose part gap is minimal and switches a pair `(x, y)` such
/// that no other such `z` pairs with `y` while lying above `x`, and none
/// pairs with `x` while lying below `y`; the switch creates no new
/// inversion, so the count strictly drops.
pub fn witness(cd: &ChainData, t: &[i64]) -> Result<Witness> {
    let g = GPerm::from_matrix(&cd.b_matrix())?;
    if !g.contains(t) {
        return Err(Error::NonLatticePoint(t.to_vec()));
    }
    let pieces = decompose_lattice_point(&g, t)?;
    let poset = cd.padded();
    let mut parts = vec![0usize; poset.len()];
    for (&(i, j), piece) in &pieces {
        let order = poset.linearize(&cd.block(i, j));
        let mut it = order.into_iter();
        for k in i..=j {
            for _ in 0..piece[k - 1] {
                let p = it.next().expect("piece sums to the block size");
                parts[p] = k;
            }
        }
    }

    let mut switches = 0;
    loop {
        let inv = inversions(cd, &parts);
        let Some(gap) = inv.iter().map(|&(x, y)| parts[x] - parts[y]).min() else {
            break;
        };
        let minimal: Vec<(usize, usize)> = inv
            .into_iter()
            .filter(|&(x, y)| parts[x] - parts[y] == gap)
            .collect();
        let safe = |&(x, y): &(usize, usize)| {
            !minimal
                .iter()
                .any(|&(a, b)| (b == y && poset.lt(x, a)) || (a == x && poset.lt(b, y)))
        };
        let &(x, y) = minimal
            .iter()
            .filter(|pair| safe(pair))
            .min_by(|&&(x1, y1), &&(x2, y2)| {
                (poset.id(x1), poset.id(y1)).cmp(&(poset.id(x2), poset.id(y2)))
            })
            .expect("a maximal/minimal pair always exists among minimal-gap inversions");
        debug_assert!({
            let (bx, by) = (cd.block_of(x), cd.block_of(y));
            let (k, k2) = (parts[x], parts[y]);
            [k, k2]
                .iter()
                .all(|&v| bx.0 <= v && v <= bx.1 && by.0 <= v && v <= by.1)
        });
        parts.swap(x, y);
        switches += 1;
    }

    let mut order = Vec::with_capacity(poset.len());
    for k in 1..=cd.dim() {
        let members: Vec<usize> = (0..poset.len()).filter(|&p| parts[p] == k).collect();
        let qk = cd.q(k);
        // q_k is maximal in its part, so it can go last
        let mut run: Vec<usize> = poset
            .linearize(&members)
            .into_iter()
            .filter(|&p| p != qk)
            .collect();
        run.push(qk);
        order.extend(run);
    }
    let extension = LinearExtension::from_order(poset, &order)?;
    debug_assert_eq!(cd.m_vector(&extension), t);
    Ok(Witness {
        parts,
        extension,
        switches,
    })
}
