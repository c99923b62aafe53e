//! Subposets that are not chains.
//!
//! Every total order `q_{w(1)} < ... < q_{w(r)}` extending `Q` (a valid
//! chamber `w`) turns `Q` into a chain of `P_w`; the chain machinery then
//! gives a convex block whose lattice points are the subposet vectors of the
//! extensions compatible with `w`. Shifting coordinate `w(i)` down by
//! `i - 1` moves each block from its open chamber onto the closed one, and
//! the shifted blocks meet face to face. [`glue`] checks that claim on the
//! exact inequality descriptions and on lattice points.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::chainpoly::{to_subposet_coords, ChainData, GPerm, DEFAULT_DIM_CAP};
use crate::error::{Error, Result};
use crate::exact::affine_dimension;
use crate::poset::{Poset, Subposet};

/// A total order of the labels `1..=r`: `order()[i - 1] = w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chamber(pub Vec<usize>);

impl Chamber {
    pub fn identity(r: usize) -> Self {
        Self((1..=r).collect())
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position `i` (1-based) with `w(i) = label`.
    pub fn position(&self, label: usize) -> usize {
        self.0
            .iter()
            .position(|&l| l == label)
            .expect("label in chamber")
            + 1
    }

    /// `-sum_i (i - 1) e_{w(i)}`, in label order.
    pub fn translation(&self) -> Vec<i64> {
        let mut shift = vec![0; self.0.len()];
        for (pos, &label) in self.0.iter().enumerate() {
            shift[label - 1] = -(pos as i64);
        }
        shift
    }

    /// Is `x` strictly increasing along the chamber order?
    pub fn strictly_contains(&self, x: &[i64]) -> bool {
        self.0.windows(2).all(|w| x[w[0] - 1] < x[w[1] - 1])
    }

    /// Is `x` weakly increasing along the chamber order?
    pub fn weakly_contains(&self, x: &[i64]) -> bool {
        self.0.windows(2).all(|w| x[w[0] - 1] <= x[w[1] - 1])
    }

    fn is_valid_for(&self, q: &Subposet) -> bool {
        let m = q.members();
        let r = m.len();
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted == (1..=r).collect::<Vec<_>>()
            && self.0.iter().enumerate().all(|(i, &a)| {
                self.0[i + 1..]
                    .iter()
                    .all(|&b| !q.parent().lt(m[b - 1], m[a - 1]))
            })
    }
}

/// Total orders of the labels extending the order of `Q`, in lexicographic
/// order.
pub fn valid_chambers(q: &Subposet) -> Vec<Chamber> {
    let induced = q.induced();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(q.len());
    let mut used = vec![false; q.len()];
    fn go(p: &Poset, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Chamber>) {
        let r = used.len();
        if current.len() == r {
            out.push(Chamber(current.iter().map(|&a| a + 1).collect()));
            return;
        }
        for a in 0..r {
            if !used[a] && (0..r).all(|b| used[b] || !p.lt(b, a)) {
                used[a] = true;
                current.push(a);
                go(p, current, used, out);
                current.pop();
                used[a] = false;
            }
        }
    }
    go(&induced, &mut current, &mut used, &mut out);
    out
}

/// `P_w` and the chain `Q_w = (q_{w(1)}, ..., q_{w(r)})`.
pub fn extend_poset(q: &Subposet, w: &Chamber) -> Result<(Poset, Subposet)> {
    if !w.is_valid_for(q) {
        return Err(Error::InvalidChamber(w.0.clone()));
    }
    let m = q.members();
    let chain: Vec<usize> = w.0.iter().map(|&l| m[l - 1]).collect();
    let extra: Vec<(usize, usize)> = chain.windows(2).map(|c| (c[0], c[1])).collect();
    let pw = q.parent().with_relations(&extra)?;
    let qw = Subposet::from_indices(pw.clone(), chain)?;
    Ok((pw, qw))
}

fn padded(q: &Subposet) -> Subposet {
    if q.parent().padding().is_some() {
        q.clone()
    } else {
        q.padded()
    }
}

/// `coeffs . x <= bound` on translated label coordinates, coming from the
/// block inequality for the chain-position subset `mask` (bit `k - 1` for
/// position `k` of `1..=r+1`). The full mask is the equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub mask: u64,
    pub coeffs: Vec<i64>,
    pub bound: i64,
}

impl Inequality {
    pub fn value(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        self.value(x) <= self.bound
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.value(x) == self.bound
    }
}

/// One convex block: `N'(P_w, Q_w)` read in the labels of `Q`.
#[derive(Clone, Debug)]
pub struct Block {
    pub chamber: Chamber,
    /// Chain data of the padded `P_w` along `Q_w`.
    pub chain: ChainData,
    /// `N(P_w, Q_w)` in chain-position coordinates.
    pub poly: GPerm,
    pub translation: Vec<i64>,
    /// Untranslated lattice points (padded ranks, label order).
    pub points: BTreeSet<Vec<i64>>,
    pub translated: BTreeSet<Vec<i64>>,
}

impl Block {
    /// Chain-position vector `(c_1, ..., c_r)` to label order.
    fn to_labels(&self, c: &[i64]) -> Vec<i64> {
        let mut x = vec![0; c.len()];
        for (pos, &label) in self.chamber.0.iter().enumerate() {
            x[label - 1] = c[pos];
        }
        x
    }

    /// Defining inequalities on translated label coordinates; the last entry
    /// (full mask) holds with equality everywhere.
    pub fn inequalities(&self) -> Vec<Inequality> {
        let n = self.poly.dim();
        let r = n - 1;
        let total = self.poly.total();
        (1..=self.poly.full_mask())
            .map(|mask| {
                let has = |k: usize| mask >> (k - 1) & 1 == 1;
                // sum_{k in I} (c_k - c_{k-1}), c_0 = 0, c_n = total
                let mut chain_coeffs = vec![0i64; r];
                for m in 1..=r {
                    chain_coeffs[m - 1] = i64::from(has(m)) - i64::from(has(m + 1));
                }
                let mut bound = self.poly.z(mask) - if has(n) { total } else { 0 };
                // c_m = x_{w(m)} + (m - 1) after translation
                for (m, a) in chain_coeffs.iter().enumerate() {
                    bound -= a * m as i64;
                }
                Inequality {
                    mask,
                    coeffs: self.to_labels(&chain_coeffs),
                    bound,
                }
            })
            .collect()
    }

    pub fn dimension(&self) -> Option<usize> {
        affine_dimension(&self.points)
    }
}

/// Builds the block of chamber `w`, in padded ranks.
pub fn build_block(q: &Subposet, w: &Chamber) -> Result<Block> {
    let q = padded(q);
    let (_, qw) = extend_poset(&q, w)?;
    let chain = ChainData::from_subposet(&qw)?;
    let poly = chain.npq(DEFAULT_DIM_CAP)?;
    let mut block = Block {
        chamber: w.clone(),
        translation: w.translation(),
        chain,
        poly,
        points: BTreeSet::new(),
        translated: BTreeSet::new(),
    };
    for t in block.poly.lattice_points()? {
        let x = block.to_labels(&to_subposet_coords(&t));
        let y: Vec<i64> = x
            .iter()
            .zip(&block.translation)
            .map(|(a, b)| a + b)
            .collect();
        block.points.insert(x);
        block.translated.insert(y);
    }
    Ok(block)
}

/// Union over chambers of the untranslated block points; checks the
/// chamber sets are pairwise disjoint.
pub fn posetohedron_points(q: &Subposet) -> Result<BTreeSet<Vec<i64>>> {
    let mut all = BTreeSet::new();
    let mut owner: BTreeMap<Vec<i64>, Chamber> = BTreeMap::new();
    for w in valid_chambers(q) {
        let block = build_block(q, &w)?;
        for x in block.points {
            if let Some(v) = owner.insert(x.clone(), w.clone()) {
                return Err(Error::GluingViolation {
                    w: w.0.clone(),
                    v: v.0,
                    point: x,
                    reason: "point lies in two chamber blocks".into(),
                });
            }
            all.insert(x);
        }
    }
    Ok(all)
}

/// Intersection certificate for one pair of translated blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    /// Indices into [`BlockComplex::blocks`].
    pub w: usize,
    pub v: usize,
    /// Labels `(a, b)` with `a` before `b` in `w` and after it in `v`: the
    /// blocks lie on opposite sides of `x_a = x_b`.
    pub separating: (usize, usize),
    /// Label classes forced equal on the common closed chamber face.
    pub classes: Vec<Vec<usize>>,
    pub intersection: Intersection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Intersection {
    Empty,
    Face {
        /// Masks of the inequalities of each block tight on the face.
        tight_w: Vec<u64>,
        tight_v: Vec<u64>,
        dimension: usize,
        points: Vec<Vec<i64>>,
    },
}

/// Adjacent chambers differing by swapping labels `i`, `j` at consecutive
/// positions, with the common wall section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallRecord {
    pub w: usize,
    pub v: usize,
    pub labels: (usize, usize),
    /// Translated lattice points on `x_i = x_j`.
    pub section: Vec<Vec<i64>>,
    /// Untranslated points of `w` with `c_j = c_i + 1`, each of which maps to
    /// a point of `v` by swapping the two entries.
    pub swapped: usize,
}

/// Certified collection of translated blocks.
#[derive(Clone, Debug)]
pub struct BlockComplex {
    pub blocks: Vec<Block>,
    pub pairs: Vec<PairRecord>,
    pub walls: Vec<WallRecord>,
}

fn violation(bc: &[Block], w: usize, v: usize, point: Vec<i64>, reason: &str) -> Error {
    Error::GluingViolation {
        w: bc[w].chamber.0.clone(),
        v: bc[v].chamber.0.clone(),
        point,
        reason: reason.into(),
    }
}

/// Label classes forced equal on the intersection of the closed chambers of
/// `w` and `v`: inverted pairs are equal, and so is everything between them
/// in either order; repeated to a fixpoint.
fn equal_classes(w: &Chamber, v: &Chamber) -> Vec<Vec<usize>> {
    let r = w.len();
    let mut parent: Vec<usize> = (0..=r).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut a = a;
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for a in 1..=r {
        for b in 1..=r {
            if w.position(a) < w.position(b) && v.position(a) > v.position(b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    loop {
        let mut changed = false;
        for order in [w, v] {
            for s in 0..r {
                for t in s + 1..r {
                    let (a, b) = (order.0[s], order.0[t]);
                    if find(&mut parent, a) == find(&mut parent, b) {
                        for &c in &order.0[s + 1..t] {
                            let (rc, ra) = (find(&mut parent, c), find(&mut parent, a));
                            if rc != ra {
                                parent[rc] = ra;
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 1..=r {
        let root = find(&mut parent, a);
        classes.entry(root).or_default().push(a);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

fn on_classes(x: &[i64], classes: &[Vec<usize>]) -> bool {
    classes
        .iter()
        .all(|c| c.iter().all(|&a| x[a - 1] == x[c[0] - 1]))
}

fn tight_face(block: &Block, face: &BTreeSet<Vec<i64>>) -> (Vec<u64>, BTreeSet<Vec<i64>>) {
    let tight: Vec<Inequality> = block
        .inequalities()
        .into_iter()
        .filter(|ineq| face.iter().all(|x| ineq.is_tight(x)))
        .collect();
    let cut = block
        .translated
        .iter()
        .filter(|x| tight.iter().all(|ineq| ineq.is_tight(x)))
        .cloned()
        .collect();
    (tight.iter().map(|i| i.mask).collect(), cut)
}

/// Builds every chamber block and certifies that the translated blocks form
/// a polytopal complex.
///
/// Checks, per block: untranslated points strictly inside the chamber,
/// translated points (hence the whole lattice polytope) in its closure, and
/// every lattice point satisfying the block's own inequality description.
/// Per pair: a separating wall (disjoint interiors), equal sections on the
/// common closed chamber face, and that this common section is exactly the
/// face cut out by the inequalities of each block that are tight on it. Per
/// adjacent pair: equal sections on the wall `x_i = x_j`, and the swap
/// bijection between the layers `c_j = c_i + 1` and `c_i = c_j + 1`.
pub fn glue(q: &Subposet) -> Result<BlockComplex> {
    let blocks: Vec<Block> = valid_chambers(q)
        .iter()
        .map(|w| build_block(q, w))
        .collect::<Result<_>>()?;

    for (idx, b) in blocks.iter().enumerate() {
        if let Some(x) = b.points.iter().find(|x| !b.chamber.strictly_contains(x)) {
            return Err(violation(
                &blocks,
                idx,
                idx,
                x.clone(),
                "block point outside its open chamber",
            ));
        }
        if let Some(x) = b.translated.iter().find(|x| !b.chamber.weakly_contains(x)) {
            return Err(violation(
                &blocks,
                idx,
                idx,
                x.clone(),
                "translated point outside the closed chamber",
            ));
        }
        let ineqs = b.inequalities();
        let full = ineqs.last().expect("at least the equality");
        if let Some(x) = b
            .translated
            .iter()
            .find(|x| !ineqs.iter().all(|i| i.holds(x)) || !full.is_tight(x))
        {
            return Err(violation(
                &blocks,
                idx,
                idx,
                x.clone(),
                "lattice point violates the block inequalities",
            ));
        }
    }

    let mut pairs = Vec::new();
    let mut walls = Vec::new();
    for wi in 0..blocks.len() {
        for vi in wi + 1..blocks.len() {
            let (bw, bv) = (&blocks[wi], &blocks[vi]);
            let (w, v) = (&bw.chamber, &bv.chamber);
            let separating =
                w.0.iter()
                    .enumerate()
                    .flat_map(|(s, &a)| w.0[s + 1..].iter().map(move |&b| (a, b)))
                    .find(|&(a, b)| v.position(a) > v.position(b))
                    .expect("distinct chambers invert some pair");
            let classes = equal_classes(w, v);
            let section = |b: &Block| -> BTreeSet<Vec<i64>> {
                b.translated
                    .iter()
                    .filter(|x| on_classes(x, &classes))
                    .cloned()
                    .collect()
            };
            let (sw, sv) = (section(bw), section(bv));
            if sw != sv {
                let x = sw.symmetric_difference(&sv).next().unwrap().clone();
                return Err(violation(
                    &blocks,
                    wi,
                    vi,
                    x,
                    "sections on the common chamber face differ",
                ));
            }
            let common: BTreeSet<Vec<i64>> = bw
                .translated
                .intersection(&bv.translated)
                .cloned()
                .collect();
            if common != sw {
                let x = common.symmetric_difference(&sw).next().unwrap().clone();
                return Err(violation(
                    &blocks,
                    wi,
                    vi,
                    x,
                    "intersection leaves the common chamber face",
                ));
            }
            let intersection = if common.is_empty() {
                Intersection::Empty
            } else {
                let (tight_w, face_w) = tight_face(bw, &common);
                let (tight_v, face_v) = tight_face(bv, &common);
                for face in [&face_w, &face_v] {
                    if *face != common {
                        let x = face.symmetric_difference(&common).next().unwrap().clone();
                        return Err(violation(
                            &blocks,
                            wi,
                            vi,
                            x,
                            "intersection is not the face cut out by its tight inequalities",
                        ));
                    }
                }
                Intersection::Face {
                    tight_w,
                    tight_v,
                    dimension: affine_dimension(&common).expect("nonempty"),
                    points: common.into_iter().collect(),
                }
            };
            pairs.push(PairRecord {
                w: wi,
                v: vi,
                separating,
                classes,
                intersection,
            });

            if let Some(wall) = adjacent_wall(&blocks, wi, vi)? {
                walls.push(wall);
            }
        }
    }
    Ok(BlockComplex {
        blocks,
        pairs,
        walls,
    })
}

fn adjacent_wall(blocks: &[Block], wi: usize, vi: usize) -> Result<Option<WallRecord>> {
    let (w, v) = (&blocks[wi].chamber, &blocks[vi].chamber);
    let diff: Vec<usize> = (0..w.len()).filter(|&s| w.0[s] != v.0[s]).collect();
    let &[s, s1] = diff.as_slice() else {
        return Ok(None);
    };
    if s1 != s + 1 || w.0[s] != v.0[s1] || w.0[s1] != v.0[s] {
        return Ok(None);
    }
    let (i, j) = (w.0[s], w.0[s1]);
    let on_wall = |b: &Block| -> BTreeSet<Vec<i64>> {
        b.translated
            .iter()
            .filter(|x| x[i - 1] == x[j - 1])
            .cloned()
            .collect()
    };
    let (hw, hv) = (on_wall(&blocks[wi]), on_wall(&blocks[vi]));
    if hw != hv {
        let x = hw.symmetric_difference(&hv).next().unwrap().clone();
        return Err(violation(blocks, wi, vi, x, "wall sections differ"));
    }
    let layer = |b: &Block, lo: usize, hi: usize| -> BTreeSet<Vec<i64>> {
        b.points
            .iter()
            .filter(|c| c[hi - 1] == c[lo - 1] + 1)
            .cloned()
            .collect()
    };
    let (lw, lv) = (layer(&blocks[wi], i, j), layer(&blocks[vi], j, i));
    let swapped: BTreeSet<Vec<i64>> = lw
        .iter()
        .map(|c| {
            let mut d = c.clone();
            d.swap(i - 1, j - 1);
            d
        })
        .collect();
    if swapped != lv {
        let x = swapped.symmetric_difference(&lv).next().unwrap().clone();
        return Err(violation(
            blocks,
            wi,
            vi,
            x,
            "swapping the wall layer is not a bijection",
        ));
    }
    Ok(Some(WallRecord {
        w: wi,
        v: vi,
        labels: (i, j),
        section: hw.into_iter().collect(),
        swapped: lw.len(),
    }))
}

/// Result of merging two incomparable members of `Q`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub subposet: Subposet,
    pub merged_id: String,
    /// New label (1-based) of every old label; `i` and `j` share one.
    pub label_map: Vec<usize>,
}

/// Identifies `q_i` and `q_j` (labels, 1-based) into one element, replacing
/// both in every relation. Members are relabelled stably so that the label
/// order still respects the quotient order.
pub fn quotient_poset(q: &Subposet, i: usize, j: usize) -> Result<Quotient> {
    let r = q.len();
    if i == j || i == 0 || j == 0 || i > r || j > r {
        return Err(Error::Input(format!(
            "labels {i}, {j} must be distinct in 1..={r}"
        )));
    }
    let (i, j) = (i.min(j), i.max(j));
    let p = q.parent();
    let (qi, qj) = (q.members()[i - 1], q.members()[j - 1]);
    if p.comparable(qi, qj) {
        return Err(Error::Comparable(
            p.id(qi).to_string(),
            p.id(qj).to_string(),
        ));
    }
    let merged_id = format!("{}~{}", p.id(qi), p.id(qj));
    let rename = |a: usize| -> String {
        if a == qi || a == qj {
            merged_id.clone()
        } else {
            p.id(a).to_string()
        }
    };
    let ids: Vec<String> = (0..p.len()).filter(|&a| a != qj).map(rename).collect();
    let relations: Vec<(String, String)> = p
        .covers()
        .into_iter()
        .map(|(a, b)| (rename(a), rename(b)))
        .collect();
    let quotient = Poset::from_relations(&ids, &relations)?;

    // old labels with j folded into i, then a stable topological order
    let mut pending: Vec<usize> = (1..=r).filter(|&l| l != j).collect();
    let id_of = |l: usize| -> usize {
        quotient
            .index_of(&rename(q.members()[l - 1]))
            .expect("renamed member present")
    };
    let mut ordered = Vec::with_capacity(r - 1);
    while !pending.is_empty() {
        let pos = pending
            .iter()
            .position(|&l| !pending.iter().any(|&m| quotient.lt(id_of(m), id_of(l))))
            .expect("quotient is acyclic");
        ordered.push(pending.remove(pos));
    }
    let mut label_map = vec![0; r];
    for (new, &old) in ordered.iter().enumerate() {
        label_map[old - 1] = new + 1;
    }
    label_map[j - 1] = label_map[i - 1];
    let members: Vec<usize> = ordered.iter().map(|&l| id_of(l)).collect();
    let subposet = Subposet::from_indices(quotient, members)?;
    Ok(Quotient {
        subposet,
        merged_id,
        label_map,
    })
}

/// Comparison between the glued wall layer and the quotient instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCheck {
    /// Translated images of all block points with `c_j = c_i + 1`.
    pub wall_points: BTreeSet<Vec<i64>>,
    /// Quotient subposet vectors embedded by splitting the merged entry `m`
    /// into `(m, m + 1)` and shifting later ranks, then translated by the
    /// chamber they fall in.
    pub embedded: BTreeSet<Vec<i64>>,
}

impl QuotientCheck {
    pub fn agrees(&self) -> bool {
        self.wall_points == self.embedded
    }
}

fn chamber_of(x: &[i64]) -> Chamber {
    let mut labels: Vec<usize> = (1..=x.len()).collect();
    labels.sort_by_key(|&l| x[l - 1]);
    Chamber(labels)
}

/// Checks that the layer of the posetohedron where `q_j` immediately follows
/// `q_i` is the quotient instance's point set, placed by the translation.
pub fn wall_vs_quotient(
    bc: &BlockComplex,
    q: &Subposet,
    i: usize,
    j: usize,
) -> Result<QuotientCheck> {
    let wall_points = bc
        .blocks
        .iter()
        .flat_map(|b| {
            b.points
                .iter()
                .filter(|c| c[j - 1] == c[i - 1] + 1)
                .map(|c| c.iter().zip(&b.translation).map(|(a, s)| a + s).collect())
        })
        .collect();
    let quotient = quotient_poset(q, i, j)?;
    let (lo, hi) = (i.min(j), i.max(j));
    let (first, second) = (i, j);
    let mut embedded = BTreeSet::new();
    for y in posetohedron_points(&quotient.subposet)? {
        let m = y[quotient.label_map[lo - 1] - 1];
        let mut c = vec![0i64; q.len()];
        for l in 1..=q.len() {
            if l == lo || l == hi {
                continue;
            }
            let u = y[quotient.label_map[l - 1] - 1];
            c[l - 1] = if u < m { u } else { u + 1 };
        }
        c[first - 1] = m;
        c[second - 1] = m + 1;
        let shift = chamber_of(&c).translation();
        embedded.insert(c.iter().zip(&shift).map(|(a, s)| a + s).collect());
    }
    Ok(QuotientCheck {
        wall_points,
        embedded,
    })
}

/// Dual graph of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub nodes: usize,
    /// Pairs sharing a face of codimension at most one in the smaller block.
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
    pub connected: bool,
    /// Components when any nonempty intersection counts as an edge.
    pub touching_components: usize,
}

/// Dual graph with an edge for every pair of blocks whose common face has
/// dimension at least `min(dim w, dim v) - 1`.
pub fn connectivity_report(bc: &BlockComplex) -> ConnectivityReport {
    let n = bc.blocks.len();
    let dims: Vec<usize> = bc
        .blocks
        .iter()
        .map(|b| b.dimension().unwrap_or(0))
        .collect();
    let mut edges = Vec::new();
    let mut touching = Vec::new();
    for p in &bc.pairs {
        if let Intersection::Face { dimension, .. } = &p.intersection {
            touching.push((p.w, p.v));
            if dimension + 1 >= dims[p.w].min(dims[p.v]) {
                edges.push((p.w, p.v));
            }
        }
    }
    let components = count_components(n, &edges);
    ConnectivityReport {
        nodes: n,
        components,
        connected: components <= 1,
        touching_components: count_components(n, &touching),
        edges,
    }
}

fn count_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut components = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components
}

/// JSON form of a certified complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    /// `padded` or `raw`; raw points are padded ranks minus one.
    pub convention: String,
    pub blocks: Vec<BlockJson>,
    pub pairs: Vec<PairRecord>,
    pub walls: Vec<WallRecord>,
    pub connectivity: ConnectivityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub chamber: Chamber,
    pub translation: Vec<i64>,
    pub c: IndexMap<String, u64>,
    pub points: Vec<Vec<i64>>,
    pub translated_points: Vec<Vec<i64>>,
}

impl BlockComplex {
    pub fn to_json(&self, raw: bool) -> ComplexJson {
        let offset = i64::from(raw);
        let shift = |pts: &mut dyn Iterator<Item = &Vec<i64>>| -> Vec<Vec<i64>> {
            pts.map(|x| x.iter().map(|v| v - offset).collect())
                .collect()
        };
        let shift_face = |pair: &PairRecord| -> PairRecord {
            let mut pair = pair.clone();
            if let Intersection::Face { points, .. } = &mut pair.intersection {
                *points = shift(&mut points.iter());
            }
            pair
        };
        ComplexJson {
            convention: if raw { "raw" } else { "padded" }.into(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson {
                    chamber: b.chamber.clone(),
                    translation: b.translation.clone(),
                    c: b.poly.to_json().c,
                    points: shift(&mut b.points.iter()),
                    translated_points: shift(&mut b.translated.iter()),
                })
                .collect(),
            pairs: self.pairs.iter().map(shift_face).collect(),
            walls: self
                .walls
                .iter()
                .map(|w| {
                    let mut w = w.clone();
                    w.section = shift(&mut w.section.iter());
                    w
                })
                .collect(),
            connectivity: connectivity_report(self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_poset, subposet_vectors, EnumerationLimit};

    fn antichain_q(extra: &[&str], rel: &[(&str, &str)], q: &[&str]) -> Subposet {
        let mut ids: Vec<&str> = q.to_vec();
        ids.extend_from_slice(extra);
        let p = build_poset(&ids, rel).unwrap();
        Subposet::new(p, q).unwrap()
    }

    #[test]
    fn chamber_counts() {
        let p = build_poset(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let chain = Subposet::new(p.clone(), &["a", "b"]).unwrap();
        assert_eq!(valid_chambers(&chain), vec![Chamber(vec![1, 2])]);
        let two = Subposet::new(p.clone(), &["a", "c"]).unwrap();
        assert_eq!(valid_chambers(&two).len(), 2);
        let three = antichain_q(&[], &[], &["x", "y", "z"]);
        assert_eq!(valid_chambers(&three).len(), 6);
    }

    #[test]
    fn translation_vector() {
        assert_eq!(Chamber(vec![2, 3, 1]).translation(), vec![-2, 0, -1]);
    }

    #[test]
    fn chain_q_extends_to_itself() {
        let p = build_poset(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let q = Subposet::new(p.clone(), &["a", "b"]).unwrap();
        let (pw, qw) = extend_poset(&q, &Chamber::identity(2)).unwrap();
        assert_eq!(pw, p);
        assert!(qw.is_chain());
        assert!(matches!(
            extend_poset(&q, &Chamber(vec![2, 1])),
            Err(Error::InvalidChamber(_))
        ));
    }

    #[test]
    fn extension_of_pw_is_extension_of_p() {
        let q = antichain_q(&["u", "v"], &[("u", "a"), ("b", "v")], &["a", "b"]);
        for w in valid_chambers(&q) {
            let (pw, _) = extend_poset(&q, &w).unwrap();
            for ext in pw.linear_extensions() {
                assert!(ext.is_valid_for(q.parent()));
            }
        }
    }

    #[test]
    fn chain_q_single_block() {
        let p = build_poset(&["a", "b", "y", "z"], &[("a", "b"), ("y", "b"), ("y", "z")]).unwrap();
        let q = Subposet::new(p, &["a", "b"]).unwrap();
        let bc = glue(&q).unwrap();
        assert_eq!(bc.blocks.len(), 1);
        assert!(bc.pairs.is_empty());
        assert_eq!(bc.blocks[0].translation, vec![0, -1]);
        let pts: Vec<_> = bc.blocks[0].points.iter().cloned().collect();
        assert_eq!(
            pts,
            vec![vec![2, 4], vec![2, 5], vec![3, 4], vec![3, 5], vec![4, 5]]
        );
        let report = connectivity_report(&bc);
        assert_eq!((report.nodes, report.components), (1, 1));
    }

    #[test]
    fn inequality_description_matches_points() {
        let q = antichain_q(&["u", "v", "x"], &[("u", "a"), ("b", "v")], &["a", "b"]);
        for w in valid_chambers(&q) {
            let block = build_block(&q, &w).unwrap();
            let ineqs = block.inequalities();
            let full = ineqs.last().unwrap();
            // every integer point of a box around the block
            for x0 in -3..12 {
                for x1 in -3..12 {
                    let x = vec![x0, x1];
                    let inside = ineqs.iter().all(|i| i.holds(&x)) && full.is_tight(&x);
                    assert_eq!(inside, block.translated.contains(&x), "{x:?} in {w:?}");
                }
            }
        }
    }

    #[test]
    fn antichain_points_match_oracle() {
        let q = antichain_q(&["u", "v", "x"], &[("u", "a"), ("b", "v")], &["a", "b"]);
        let bc = glue(&q).unwrap();
        assert_eq!(bc.blocks.len(), 2);
        assert_eq!(bc.walls.len(), 1);
        let oracle = subposet_vectors(&q.padded(), EnumerationLimit::default()).unwrap();
        assert_eq!(posetohedron_points(&q).unwrap(), oracle);
        let check = wall_vs_quotient(&bc, &q, 1, 2).unwrap();
        assert!(check.agrees());
        assert!(!check.wall_points.is_empty());
    }

    #[test]
    fn three_antichain_is_connected() {
        let q = antichain_q(&["x"], &[], &["a", "b", "c"]);
        let bc = glue(&q).unwrap();
        assert_eq!(bc.blocks.len(), 6);
        let report = connectivity_report(&bc);
        assert!(report.connected, "{report:?}");
    }

    #[test]
    fn quotient_of_antichain() {
        let q = antichain_q(&[], &[], &["a", "b", "c"]);
        let quo = quotient_poset(&q, 1, 3).unwrap();
        assert_eq!(quo.subposet.parent().len(), 2);
        assert!(quo.subposet.parent().relations().is_empty());
        assert_eq!(quo.label_map, vec![1, 2, 1]);
        assert_eq!(quo.merged_id, "a~c");
        let q2 = antichain_q(&[], &[("a", "b")], &["a", "b", "c"]);
        assert!(matches!(
            quotient_poset(&q2, 1, 2),
            Err(Error::Comparable(..))
        ));
    }

    #[test]
    fn quotient_relabels_when_needed() {
        // q_2 < q_3 and q_1 || q_3: merging 1 and 3 puts the merged element
        // above q_2, so q_2 must come first
        let q = antichain_q(&[], &[("b", "c")], &["a", "b", "c"]);
        let quo = quotient_poset(&q, 1, 3).unwrap();
        assert_eq!(quo.subposet.member_ids(), vec!["b", "a~c"]);
        assert_eq!(quo.label_map, vec![2, 1, 2]);
    }

    #[test]
    fn json_round_trip() {
        let q = antichain_q(&["u"], &[("u", "a")], &["a", "b"]);
        let bc = glue(&q).unwrap();
        let text = serde_json::to_string(&bc.to_json(false)).unwrap();
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let raw = bc.to_json(true);
        let padded = bc.to_json(false);
        for (r, p) in raw.blocks.iter().zip(&padded.blocks) {
            for (x, y) in r.points.iter().zip(&p.points) {
                assert!(x.iter().zip(y).all(|(a, b)| a + 1 == *b));
            }
        }
    }
}
