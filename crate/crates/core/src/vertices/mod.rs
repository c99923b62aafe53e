//! Vertices of interval generalized permutohedra.
//!
//! Each binary-search-labelled tree on `[n]` (equivalently, each rectangle
//! subdivision of the shifted staircase `D_n`) gives the point whose `k`-th
//! coordinate is the total multiplicity of the cells in `R_k`. Every vertex
//! arises this way; distinct subdivisions may collide when some
//! off-diagonal multiplicity is zero.

mod subdivision;
mod trees;

pub use subdivision::{subdivision_to_tree, tree_to_subdivision, RectSubdivision};
pub use trees::{catalan, enumerate_trees, unrank_tree, BinTree, MAX_TREE_NODES};

use std::collections::{BTreeMap, BTreeSet};

use crate::chainpoly::{ChainData, GPerm};
use crate::error::{Error, Result};
use crate::exact::in_convex_hull;
use crate::poset::LinearExtension;

/// Default cap on the dimension for [`vertex_set`] (`C_12 = 208012`
/// subdivisions).
pub const DEFAULT_VERTEX_DIM_CAP: usize = 12;

/// A vertex together with every subdivision that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPoint {
    pub t: Vec<i64>,
    pub provenance: Vec<RectSubdivision>,
}

/// All subdivisions of `D_n`, in tree enumeration order.
pub fn subdivisions(n: usize) -> Result<impl Iterator<Item = RectSubdivision>> {
    Ok(enumerate_trees(n)?.map(|t| tree_to_subdivision(&t)))
}

/// `t_k = sum of c(i, j) over (i, j) in R_k`.
///
/// # Panics
/// If the subdivision and the polytope differ in dimension.
pub fn vertex_of(g: &GPerm, s: &RectSubdivision) -> VertexPoint {
    assert_eq!(g.dim(), s.len(), "subdivision dimension mismatch");
    let t = s
        .rects()
        .iter()
        .map(|r| r.iter().map(|&(i, j)| g.c(i, j) as i64).sum())
        .collect();
    VertexPoint {
        t,
        provenance: vec![s.clone()],
    }
}

/// Distinct vertex points over all subdivisions, sorted by coordinates, with
/// colliding subdivisions merged into the provenance.
pub fn vertex_set(g: &GPerm) -> Result<Vec<VertexPoint>> {
    vertex_set_capped(g, DEFAULT_VERTEX_DIM_CAP)
}

pub fn vertex_set_capped(g: &GPerm, cap: usize) -> Result<Vec<VertexPoint>> {
    if g.dim() > cap {
        return Err(Error::DimensionTooLarge { dim: g.dim(), cap });
    }
    let mut merged: BTreeMap<Vec<i64>, Vec<RectSubdivision>> = BTreeMap::new();
    for s in subdivisions(g.dim())? {
        let v = vertex_of(g, &s);
        merged.entry(v.t).or_default().push(s);
    }
    Ok(merged
        .into_iter()
        .map(|(t, provenance)| VertexPoint { t, provenance })
        .collect())
}

/// Cells of `R_1, ..., R_n` contributing to each coordinate of a vertex.
pub type Formula = Vec<Vec<(usize, usize)>>;

/// Symbolic vertex formulas: coordinate `k` is the list of cells of `R_k`
/// whose multiplicity is not forced to zero. Subdivisions with equal formulas
/// are merged.
pub fn symbolic_vertices(
    n: usize,
    zero_cells: &[(usize, usize)],
) -> Result<BTreeMap<Formula, Vec<RectSubdivision>>> {
    let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for s in subdivisions(n)? {
        let formula: Formula = s
            .rects()
            .iter()
            .map(|r| {
                r.iter()
                    .copied()
                    .filter(|c| !zero_cells.contains(c))
                    .collect()
            })
            .collect();
        out.entry(formula).or_default().push(s);
    }
    Ok(out)
}

/// `(b11+b12, b22, b33)` style rendering of a symbolic vertex.
pub fn format_formula(formula: &[Vec<(usize, usize)>]) -> String {
    let coords: Vec<String> = formula
        .iter()
        .map(|cells| {
            if cells.is_empty() {
                "0".to_string()
            } else {
                cells
                    .iter()
                    .map(|(i, j)| format!("b{i}{j}"))
                    .collect::<Vec<_>>()
                    .join("+")
            }
        })
        .collect();
    format!("({})", coords.join(", "))
}

/// Fills rectangle `R_k` with the ranks `t_1 + ... + t_{k-1} + 1 ..= t_1 + ... + t_k`:
/// the elements of the blocks `B(i, j)`, `(i, j)` in `R_k`, are listed in a
/// fixed linear order (with `q_k` last) and the runs are concatenated.
pub fn vertex_extension(cd: &ChainData, s: &RectSubdivision) -> Result<LinearExtension> {
    if cd.dim() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: cd.dim(),
            got: s.len(),
        });
    }
    let poset = cd.padded();
    let mut order = Vec::with_capacity(poset.len());
    for k in 1..=s.len() {
        let members: Vec<usize> = s
            .rect(k)
            .iter()
            .flat_map(|&(i, j)| cd.block(i, j))
            .collect();
        let qk = cd.q(k);
        order.extend(poset.linearize(&members).into_iter().filter(|&p| p != qk));
        order.push(qk);
    }
    LinearExtension::from_order(poset, &order)
}

/// The points of `points` that are not convex combinations of the others,
/// decided by exact rational feasibility.
pub fn hull_vertices_oracle(points: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    points
        .iter()
        .filter(|p| {
            let others: Vec<&[i64]> = points
                .iter()
                .filter(|q| q != p)
                .map(Vec::as_slice)
                .collect();
            !in_convex_hull(p, &others)
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_poset, EnumerationLimit, Subposet};

    fn b_matrix(b11: u64, b12: u64, b13: u64, b22: u64, b23: u64, b33: u64) -> GPerm {
        GPerm::from_matrix(&[vec![b11, b12, b13], vec![0, b22, b23], vec![0, 0, b33]]).unwrap()
    }

    fn pentagon_cd() -> ChainData {
        let p = build_poset(&["a", "b", "y", "z"], &[("a", "b"), ("y", "b"), ("y", "z")]).unwrap();
        ChainData::from_subposet(&Subposet::new(p, &["a", "b"]).unwrap()).unwrap()
    }

    #[test]
    fn pentagon_vertex_of() {
        let g = b_matrix(2, 1, 1, 1, 0, 1);
        let s = RectSubdivision::new(vec![
            vec![(1, 1)],
            vec![(1, 2), (2, 2)],
            vec![(1, 3), (2, 3), (3, 3)],
        ])
        .unwrap();
        assert_eq!(vertex_of(&g, &s).t, vec![2, 2, 2]);
    }

    #[test]
    fn zero_matrix_gives_origin() {
        let g = GPerm::from_matrix(&vec![vec![0; 4]; 4]).unwrap();
        for v in vertex_set(&g).unwrap() {
            assert_eq!(v.t, vec![0; 4]);
            assert_eq!(v.provenance.len(), 14);
        }
    }

    #[test]
    fn pentagon_vertices_match_hull() {
        let g = b_matrix(2, 1, 1, 1, 0, 1);
        let verts: BTreeSet<Vec<i64>> = vertex_set(&g).unwrap().into_iter().map(|v| v.t).collect();
        let expect: BTreeSet<Vec<i64>> =
            [vec![2, 2, 2], vec![2, 3, 1], vec![3, 1, 2], vec![4, 1, 1]].into();
        assert_eq!(verts, expect);
        let hull = hull_vertices_oracle(&g.lattice_points().unwrap());
        assert_eq!(hull, expect);
        assert!(!hull.contains(&vec![3, 2, 1]));
    }

    #[test]
    fn generic_matrix_has_catalan_many() {
        let g = b_matrix(1, 2, 3, 5, 7, 11);
        assert_eq!(vertex_set(&g).unwrap().len(), 5);
    }

    #[test]
    fn degenerate_b13_formulas() {
        let formulas = symbolic_vertices(3, &[(1, 3)]).unwrap();
        assert_eq!(formulas.len(), 4);
        let expect: BTreeSet<Vec<Vec<(usize, usize)>>> = [
            vec![vec![(1, 1), (1, 2)], vec![(2, 2), (2, 3)], vec![(3, 3)]],
            vec![vec![(1, 1), (1, 2)], vec![(2, 2)], vec![(2, 3), (3, 3)]],
            vec![vec![(1, 1)], vec![(1, 2), (2, 2), (2, 3)], vec![(3, 3)]],
            vec![vec![(1, 1)], vec![(1, 2), (2, 2)], vec![(2, 3), (3, 3)]],
        ]
        .into();
        assert_eq!(formulas.keys().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn hull_oracle_small_cases() {
        let line: BTreeSet<Vec<i64>> = [vec![0, 2], vec![1, 1], vec![2, 0]].into();
        let hull = hull_vertices_oracle(&line);
        assert_eq!(hull, [vec![0, 2], vec![2, 0]].into());
        let single: BTreeSet<Vec<i64>> = [vec![3, 3]].into();
        assert_eq!(hull_vertices_oracle(&single), single);
    }

    #[test]
    fn pentagon_extensions() {
        let cd = pentagon_cd();
        let g = cd.npq(16).unwrap();
        let oracle: BTreeSet<LinearExtension> = cd
            .padded()
            .checked_linear_extensions(EnumerationLimit::default())
            .unwrap()
            .collect();
        for s in subdivisions(3).unwrap() {
            let ext = vertex_extension(&cd, &s).unwrap();
            assert!(oracle.contains(&ext));
            assert_eq!(cd.m_vector(&ext), vertex_of(&g, &s).t);
        }
        // (4,1,1): a has rank at most 4, b rank 5
        let s = subdivisions(3)
            .unwrap()
            .find(|s| vertex_of(&g, s).t == vec![4, 1, 1])
            .unwrap();
        let ext = vertex_extension(&cd, &s).unwrap();
        assert_eq!(ext.restrict(cd.interior_chain()), vec![4, 5]);
    }

    #[test]
    fn chain_poset_single_extension() {
        let p = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let cd = ChainData::from_subposet(&Subposet::new(p, &["a", "c"]).unwrap()).unwrap();
        let exts: BTreeSet<_> = subdivisions(3)
            .unwrap()
            .map(|s| vertex_extension(&cd, &s).unwrap())
            .collect();
        assert_eq!(exts.len(), 1);
    }
}
