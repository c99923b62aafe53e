//! Finite posets, labelled subposets and brute-force linear extensions.
//!
//! A [`Poset`] keeps its strict order transitively closed, so comparability
//! queries are a single table lookup. Linear extensions are produced lazily by
//! backtracking; at every step the available (minimal, unplaced) element with
//! the smallest id is tried first, which makes every stream deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Id of the global minimum adjoined by [`Poset::pad`].
pub const HAT0: &str = "hat0";
/// Id of the global maximum adjoined by [`Poset::pad`].
pub const HAT1: &str = "hat1";

/// Default cap on the number of elements for operations that enumerate every
/// linear extension.
pub const DEFAULT_MAX_ELEMENTS: usize = 20;

/// Guard for enumeration-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimit {
    pub max_elements: usize,
    pub force: bool,
}

impl Default for EnumerationLimit {
    fn default() -> Self {
        Self {
            max_elements: DEFAULT_MAX_ELEMENTS,
            force: false,
        }
    }
}

impl EnumerationLimit {
    pub fn unlimited() -> Self {
        Self {
            max_elements: usize::MAX,
            force: true,
        }
    }

    pub fn check(&self, size: usize) -> Result<()> {
        if !self.force && size > self.max_elements {
            return Err(Error::TooLarge {
                size,
                cap: self.max_elements,
            });
        }
        Ok(())
    }
}

/// A finite strict partial order on named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    // row-major n*n table, lt[a * n + b] == (a < b)
    lt: Vec<bool>,
}

/// Builds a poset from element ids and (not necessarily closed) relations
/// `(a, b)` meaning `a < b`.
pub fn build_poset<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Poset> {
    for id in elements {
        let id = id.as_ref();
        if id == HAT0 || id == HAT1 {
            return Err(Error::ReservedElement(id.to_string()));
        }
    }
    Poset::from_relations(elements, relations)
}

impl Poset {
    /// Like [`build_poset`] but accepts the reserved padding ids.
    pub fn from_relations<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let mut ids = Vec::with_capacity(elements.len());
        let mut index = HashMap::with_capacity(elements.len());
        for id in elements {
            let id = id.as_ref().to_string();
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateElement(id));
            }
            ids.push(id);
        }
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::UnknownElement(s.to_string()))
            };
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_index_pairs(ids, index, &pairs)
    }

    fn from_index_pairs(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = ids.len();
        let mut lt = vec![false; n * n];
        for &(a, b) in pairs {
            lt[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for a in 0..n {
                if !lt[a * n + k] {
                    continue;
                }
                for b in 0..n {
                    if lt[k * n + b] {
                        lt[a * n + b] = true;
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| lt[a * n + a]) {
            return Err(Error::Cycle(ids[a].clone()));
        }
        Ok(Self { ids, index, lt })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, a: usize) -> &str {
        &self.ids[a]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    /// `a < b`.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a * self.ids.len() + b]
    }

    /// `a <= b`.
    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    /// Every pair of the closed relation, in index order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.lt(a, b))
            .collect()
    }

    /// Cover relations (the Hasse diagram), in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.relations()
            .into_iter()
            .filter(|&(a, b)| !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    /// Adds relations (by index) and re-closes.
    pub fn with_relations(&self, extra: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = self.relations();
        pairs.extend_from_slice(extra);
        Self::from_index_pairs(self.ids.clone(), self.index.clone(), &pairs)
    }

    /// Induced subposet on `subset`, keeping the given element order.
    pub fn restrict(&self, subset: &[usize]) -> Self {
        let ids: Vec<String> = subset.iter().map(|&a| self.ids[a].clone()).collect();
        let index = ids.iter().cloned().zip(0..).collect();
        let m = subset.len();
        let mut lt = vec![false; m * m];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                lt[i * m + j] = self.lt(a, b);
            }
        }
        Self { ids, index, lt }
    }

    /// Adjoins a global minimum [`HAT0`] and maximum [`HAT1`]. The new
    /// elements are appended, so existing indices are unchanged.
    pub fn pad(&self) -> Self {
        let n = self.len();
        let m = n + 2;
        let (h0, h1) = (n, n + 1);
        let mut ids = self.ids.clone();
        ids.push(HAT0.to_string());
        ids.push(HAT1.to_string());
        let index = ids.iter().cloned().zip(0..).collect();
        let mut lt = vec![false; m * m];
        for a in 0..n {
            for b in 0..n {
                lt[a * m + b] = self.lt(a, b);
            }
            lt[h0 * m + a] = true;
            lt[a * m + h1] = true;
        }
        lt[h0 * m + h1] = true;
        Self { ids, index, lt }
    }

    /// Indices of the padding elements, if this poset carries them as its
    /// global minimum and maximum.
    pub fn padding(&self) -> Option<(usize, usize)> {
        let h0 = self.index_of(HAT0)?;
        let h1 = self.index_of(HAT1)?;
        let n = self.len();
        let ok = (0..n).all(|a| self.le(h0, a) && self.le(a, h1));
        ok.then_some((h0, h1))
    }

    /// `true` when `members` is downward closed.
    pub fn is_order_ideal(&self, members: &[bool]) -> bool {
        let n = self.len();
        (0..n).all(|b| !members[b] || (0..n).all(|a| !self.lt(a, b) || members[a]))
    }

    /// Element indices sorted by id; the backtracking choice order.
    fn id_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.ids[a].cmp(&self.ids[b]));
        order
    }

    /// The lexicographically first linear order of `subset` compatible with
    /// the poset (smallest available id first).
    pub fn linearize(&self, subset: &[usize]) -> Vec<usize> {
        let mut rest: Vec<usize> = subset.to_vec();
        rest.sort_by(|&a, &b| self.ids[a].cmp(&self.ids[b]));
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let pos = rest
                .iter()
                .position(|&x| !rest.iter().any(|&y| self.lt(y, x)))
                .expect("acyclic order always has a minimal element");
            out.push(rest.remove(pos));
        }
        out
    }

    /// Streams every linear extension exactly once.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions::new(self)
    }

    /// [`Poset::linear_extensions`] behind an [`EnumerationLimit`]. Padding
    /// elements do not count towards the cap.
    pub fn checked_linear_extensions(
        &self,
        limit: EnumerationLimit,
    ) -> Result<LinearExtensions<'_>> {
        let padding = if self.padding().is_some() { 2 } else { 0 };
        limit.check(self.len() - padding)?;
        Ok(self.linear_extensions())
    }
}

/// An order preserving bijection onto `1..=n`, stored as the rank of each
/// element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearExtension {
    ranks: Vec<usize>,
}

impl LinearExtension {
    /// Builds the extension listing `order` in increasing rank, validating it
    /// against `poset`.
    pub fn from_order(poset: &Poset, order: &[usize]) -> Result<Self> {
        let n = poset.len();
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: order.len(),
            });
        }
        let mut ranks = vec![0; n];
        for (pos, &a) in order.iter().enumerate() {
            if a >= n || ranks[a] != 0 {
                return Err(Error::Input(format!(
                    "order is not a permutation: {order:?}"
                )));
            }
            ranks[a] = pos + 1;
        }
        let ext = Self { ranks };
        if let Some((a, b)) = ext.violation(poset) {
            return Err(Error::NotExtendable {
                lower: poset.id(a).to_string(),
                upper: poset.id(b).to_string(),
            });
        }
        Ok(ext)
    }

    pub fn rank(&self, a: usize) -> usize {
        self.ranks[a]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Element indices in increasing rank.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.ranks.len()];
        for (a, &r) in self.ranks.iter().enumerate() {
            order[r - 1] = a;
        }
        order
    }

    /// First pair `a < b` ranked out of order, if any.
    pub fn violation(&self, poset: &Poset) -> Option<(usize, usize)> {
        poset
            .relations()
            .into_iter()
            .find(|&(a, b)| self.ranks[a] >= self.ranks[b])
    }

    pub fn is_valid_for(&self, poset: &Poset) -> bool {
        self.ranks.len() == poset.len() && self.violation(poset).is_none()
    }

    /// `(rank(q_1), ..., rank(q_r))`.
    pub fn restrict(&self, members: &[usize]) -> Vec<i64> {
        members.iter().map(|&a| self.ranks[a] as i64).collect()
    }
}

/// Lazy backtracking stream over linear extensions.
pub struct LinearExtensions<'a> {
    poset: &'a Poset,
    by_id: Vec<usize>,
    // number of unplaced elements strictly below each element
    pending: Vec<usize>,
    placed: Vec<bool>,
    // positions into `by_id` of the elements placed so far
    stack: Vec<usize>,
    primed: bool,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(poset: &'a Poset) -> Self {
        let n = poset.len();
        let pending = (0..n)
            .map(|b| (0..n).filter(|&a| poset.lt(a, b)).count())
            .collect();
        Self {
            poset,
            by_id: poset.id_order(),
            pending,
            placed: vec![false; n],
            stack: Vec::with_capacity(n),
            primed: false,
            done: false,
        }
    }

    fn candidate(&self, from: usize) -> Option<usize> {
        (from..self.by_id.len()).find(|&pos| {
            let a = self.by_id[pos];
            !self.placed[a] && self.pending[a] == 0
        })
    }

    fn push(&mut self, pos: usize) {
        let a = self.by_id[pos];
        self.placed[a] = true;
        for b in 0..self.poset.len() {
            if self.poset.lt(a, b) {
                self.pending[b] -= 1;
            }
        }
        self.stack.push(pos);
    }

    fn pop(&mut self) -> Option<usize> {
        let pos = self.stack.pop()?;
        let a = self.by_id[pos];
        self.placed[a] = false;
        for b in 0..self.poset.len() {
            if self.poset.lt(a, b) {
                self.pending[b] += 1;
            }
        }
        Some(pos + 1)
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = LinearExtension;

    fn next(&mut self) -> Option<LinearExtension> {
        if self.done {
            return None;
        }
        if self.primed {
            let mut resume = match self.pop() {
                Some(next) => next,
                None => {
                    self.done = true;
                    return None;
                }
            };
            loop {
                if let Some(pos) = self.candidate(resume) {
                    self.push(pos);
                    break;
                }
                match self.pop() {
                    Some(next) => resume = next,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
        self.primed = true;
        while self.stack.len() < self.by_id.len() {
            let pos = self
                .candidate(0)
                .expect("acyclic order always has a minimal element");
            self.push(pos);
        }
        let mut ranks = vec![0; self.by_id.len()];
        for (rank, &pos) in self.stack.iter().enumerate() {
            ranks[self.by_id[pos]] = rank + 1;
        }
        Some(LinearExtension { ranks })
    }
}

/// A labelled subposet `q_1, ..., q_r` of a parent poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subposet {
    parent: Poset,
    members: Vec<usize>,
}

impl Subposet {
    /// Validates that `ids` are distinct parent elements listed in an order
    /// where `q_i < q_j` implies `i < j`.
    pub fn new<S: AsRef<str>>(parent: Poset, ids: &[S]) -> Result<Self> {
        let mut members = Vec::with_capacity(ids.len());
        for id in ids {
            let a = parent.require(id.as_ref())?;
            if members.contains(&a) {
                return Err(Error::DuplicateMember(id.as_ref().to_string()));
            }
            members.push(a);
        }
        Self::from_indices(parent, members)
    }

    pub fn from_indices(parent: Poset, members: Vec<usize>) -> Result<Self> {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[..i] {
                if parent.lt(a, b) {
                    return Err(Error::SubposetLabel {
                        lower: parent.id(a).to_string(),
                        upper: parent.id(b).to_string(),
                    });
                }
            }
        }
        Ok(Self { parent, members })
    }

    pub fn parent(&self) -> &Poset {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn member_ids(&self) -> Vec<&str> {
        self.members.iter().map(|&a| self.parent.id(a)).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The induced order on the members, labelled `0..r`.
    pub fn induced(&self) -> Poset {
        self.parent.restrict(&self.members)
    }

    pub fn is_chain(&self) -> bool {
        self.members.windows(2).all(|w| self.parent.lt(w[0], w[1]))
    }

    /// First incomparable pair of consecutive labels, if not a chain.
    pub fn chain_violation(&self) -> Option<(usize, usize)> {
        self.members
            .windows(2)
            .find(|w| !self.parent.lt(w[0], w[1]))
            .map(|w| (w[0], w[1]))
    }

    /// Same labels inside the padded parent.
    pub fn padded(&self) -> Self {
        Self {
            parent: self.parent.pad(),
            members: self.members.clone(),
        }
    }
}

/// All `(sigma(q_1), ..., sigma(q_r))` over linear extensions `sigma` of the
/// parent, in whatever rank convention the parent carries.
pub fn subposet_vectors(q: &Subposet, limit: EnumerationLimit) -> Result<BTreeSet<Vec<i64>>> {
    Ok(q.parent
        .checked_linear_extensions(limit)?
        .map(|ext| ext.restrict(&q.members))
        .collect())
}

/// Number of extensions realising each subposet vector.
pub fn subposet_vector_counts(
    q: &Subposet,
    limit: EnumerationLimit,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    let mut counts = BTreeMap::new();
    for ext in q.parent.checked_linear_extensions(limit)? {
        *counts.entry(ext.restrict(&q.members)).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Diagram cell `(row, column)` to element id.
pub type CellIds = BTreeMap<(usize, usize), String>;

/// Id of the Young diagram cell in row `i`, column `j` (1-based).
pub fn cell_id(i: usize, j: usize) -> String {
    format!("r{i}c{j}")
}

fn check_partition(shape: &[usize]) -> Result<()> {
    if shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Input(format!(
            "shape {shape:?} is not weakly decreasing"
        )));
    }
    Ok(())
}

fn diagram_poset(cells: &[(usize, usize)]) -> Result<(Poset, CellIds)> {
    let set: BTreeSet<_> = cells.iter().copied().collect();
    let ids: Vec<String> = cells.iter().map(|&(i, j)| cell_id(i, j)).collect();
    let mut relations = Vec::new();
    for &(i, j) in cells {
        for next in [(i, j + 1), (i + 1, j)] {
            if set.contains(&next) {
                relations.push((cell_id(i, j), cell_id(next.0, next.1)));
            }
        }
    }
    let poset = build_poset(&ids, &relations)?;
    let map = cells
        .iter()
        .map(|&(i, j)| ((i, j), cell_id(i, j)))
        .collect();
    Ok((poset, map))
}

/// Poset on the cells of the Young diagram of `shape` (row `i` has
/// `shape[i-1]` cells) ordered along rows and down columns. Its linear
/// extensions are the standard Young tableaux.
pub fn young_poset(shape: &[usize]) -> Result<(Poset, CellIds)> {
    check_partition(shape)?;
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
        .collect();
    diagram_poset(&cells)
}

/// Shifted diagram poset: row `i` (1..=n) holds columns `i..=n + shape[i-1]`.
/// Also returns the diagonal cell ids `(1,1), ..., (n,n)` in order.
pub fn shifted_young_poset(n: usize, shape: &[usize]) -> Result<(Poset, CellIds, Vec<String>)> {
    check_partition(shape)?;
    if shape.len() > n {
        return Err(Error::Input(format!(
            "shape {shape:?} has more than {n} parts"
        )));
    }
    let part = |i: usize| shape.get(i - 1).copied().unwrap_or(0);
    let cells: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i..=n + part(i)).map(move |j| (i, j)))
        .collect();
    let (poset, map) = diagram_poset(&cells)?;
    let diagonal = (1..=n).map(|k| cell_id(k, k)).collect();
    Ok((poset, map, diagonal))
}
