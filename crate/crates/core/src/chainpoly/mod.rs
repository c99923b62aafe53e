//! The chain case: block decomposition of a padded poset along a chain, the
//! interval generalized permutohedron it defines, and constructive witnesses
//! for its lattice points.

mod flow;
mod gperm;
mod witness;

pub use flow::decompose_lattice_point;
pub use gperm::{
    from_subposet_coords, to_subposet_coords, GPerm, GPermJson, DEFAULT_DIM_CAP, EAGER_Z_CAP,
};
pub use witness::{witness, Witness};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poset::{EnumerationLimit, LinearExtension, Poset, Subposet};

/// A padded poset cut into blocks `B(i, j)`, `1 <= i <= j <= r + 1`, by the
/// chain `hat0 = q_0 < q_1 < ... < q_r < q_{r+1} = hat1`.
#[derive(Clone, Debug)]
pub struct ChainData {
    padded: Poset,
    // q_0 ..= q_{r+1}
    chain: Vec<usize>,
    // (i, j) for every element, 1-based
    block_of: Vec<(usize, usize)>,
    // b[(i-1) * n + (j-1)], n = r + 1
    b: Vec<u64>,
}

/// Computes the block decomposition. `chain` lists `q_1, ..., q_r` inside a
/// padded poset.
pub fn chain_decompose(padded: &Poset, chain: &[usize]) -> Result<ChainData> {
    ChainData::new(padded, chain)
}

impl ChainData {
    pub fn new(padded: &Poset, chain: &[usize]) -> Result<Self> {
        let (h0, h1) = padded.padding().ok_or(Error::NotPadded)?;
        let mut full = Vec::with_capacity(chain.len() + 2);
        full.push(h0);
        full.extend_from_slice(chain);
        full.push(h1);
        for w in full.windows(2) {
            if !padded.lt(w[0], w[1]) {
                return Err(Error::NotAChain(
                    padded.id(w[0]).to_string(),
                    padded.id(w[1]).to_string(),
                ));
            }
        }
        let n = chain.len() + 1;
        let mut block_of = Vec::with_capacity(padded.len());
        let mut b = vec![0u64; n * n];
        for p in 0..padded.len() {
            let hits: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (i..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| in_block(padded, &full, p, i, j))
                .collect();
            if hits.len() != 1 {
                return Err(Error::Partition {
                    element: padded.id(p).to_string(),
                    matches: hits.len(),
                });
            }
            let (i, j) = hits[0];
            b[(i - 1) * n + (j - 1)] += 1;
            block_of.push((i, j));
        }
        Ok(Self {
            padded: padded.clone(),
            chain: full,
            block_of,
            b,
        })
    }

    /// Decomposes along a chain subposet, padding its parent first unless it
    /// already carries `hat0`/`hat1`.
    pub fn from_subposet(q: &Subposet) -> Result<Self> {
        if let Some((a, b)) = q.chain_violation() {
            return Err(Error::NotAChain(
                q.parent().id(a).to_string(),
                q.parent().id(b).to_string(),
            ));
        }
        if q.parent().padding().is_some() {
            Self::new(q.parent(), q.members())
        } else {
            Self::new(&q.parent().pad(), q.members())
        }
    }

    pub fn padded(&self) -> &Poset {
        &self.padded
    }

    /// `r`, the number of chain elements strictly between the padding.
    pub fn r(&self) -> usize {
        self.chain.len() - 2
    }

    /// `r + 1`, the dimension of the polytope.
    pub fn dim(&self) -> usize {
        self.chain.len() - 1
    }

    /// `q_k` for `0 <= k <= r + 1`.
    pub fn q(&self, k: usize) -> usize {
        self.chain[k]
    }

    /// `q_1, ..., q_r`.
    pub fn interior_chain(&self) -> &[usize] {
        &self.chain[1..self.chain.len() - 1]
    }

    pub fn block_of(&self, p: usize) -> (usize, usize) {
        self.block_of[p]
    }

    /// Elements of `B(i, j)` in index order.
    pub fn block(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.padded.len())
            .filter(|&p| self.block_of[p] == (i, j))
            .collect()
    }

    /// `|B(i, j)|` (1-based, `i <= j`).
    pub fn b(&self, i: usize, j: usize) -> u64 {
        self.b[(i - 1) * self.dim() + (j - 1)]
    }

    /// Upper-triangular cardinality matrix, `matrix[i-1][j-1] = |B(i, j)|`.
    pub fn b_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        (0..n)
            .map(|i| self.b[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    /// `|padded P|`.
    pub fn total(&self) -> i64 {
        self.padded.len() as i64
    }

    /// The chain as a subposet of the padded poset.
    pub fn subposet(&self) -> Subposet {
        Subposet::from_indices(self.padded.clone(), self.interior_chain().to_vec())
            .expect("chain labels are increasing")
    }

    /// The point `(|I_1|, ..., |I_{r+1}|)` of an extension, where `I_k` holds
    /// the elements ranked in `(sigma(q_{k-1}), sigma(q_k)]` (`hat0` in `I_1`).
    pub fn m_vector(&self, ext: &LinearExtension) -> Vec<i64> {
        from_subposet_coords(&ext.restrict(self.interior_chain()), self.total())
    }

    /// Brute force `M(P, Q)`: every extension's `m_vector`.
    pub fn oracle_points(&self, limit: EnumerationLimit) -> Result<BTreeSet<Vec<i64>>> {
        Ok(self
            .padded
            .checked_linear_extensions(limit)?
            .map(|ext| self.m_vector(&ext))
            .collect())
    }

    /// `N(P, Q)` with multiplicities `|B(i, j)|`.
    pub fn npq(&self, cap: usize) -> Result<GPerm> {
        let n = self.dim();
        if n > cap {
            return Err(Error::DimensionTooLarge { dim: n, cap });
        }
        GPerm::from_matrix(&self.b_matrix())
    }
}

/// Membership of `p` in `B(i, j)` by the defining comparisons. For `i < j`
/// the upper condition reads `p` not below-or-equal `q_{j-1}`; with a strict
/// comparison `q_{j-1}` itself would land in both `B(j-1, j-1)` and
/// `B(j-1, j)`.
fn in_block(poset: &Poset, q: &[usize], p: usize, i: usize, j: usize) -> bool {
    if i == j {
        if i == 1 {
            poset.le(q[0], p) && poset.le(p, q[1])
        } else {
            poset.lt(q[i - 1], p) && poset.le(p, q[i])
        }
    } else {
        poset.lt(q[i - 1], p) && poset.lt(p, q[j]) && !poset.lt(q[i], p) && !poset.le(p, q[j - 1])
    }
}

/// [`ChainData::npq`] with the default dimension cap.
pub fn build_npq(cd: &ChainData) -> Result<GPerm> {
    cd.npq(DEFAULT_DIM_CAP)
}
