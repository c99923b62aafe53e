#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use posetohedron_core::io::Instance;
use posetohedron_core::{build_poset, Poset, Subposet};

pub fn fixture(name: &str) -> Instance {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"));
    Instance::load(&path).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Every permutation of `0..n`, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Rank maps (1-based) of all orderings of `p` that respect every relation,
/// found by filtering all permutations.
pub fn brute_force_rankings(p: &Poset) -> Vec<Vec<i64>> {
    let n = p.len();
    let relations = p.relations();
    permutations(n)
        .into_iter()
        .filter_map(|order| {
            let mut rank = vec![0i64; n];
            for (pos, &e) in order.iter().enumerate() {
                rank[e] = pos as i64 + 1;
            }
            relations
                .iter()
                .all(|&(a, b)| rank[a] < rank[b])
                .then_some(rank)
        })
        .collect()
}

/// Subposet vectors of `q` in raw ranks by brute force; add one for padded.
pub fn brute_force_vectors(q: &Subposet) -> BTreeSet<Vec<i64>> {
    brute_force_rankings(q.parent())
        .into_iter()
        .map(|rank| q.members().iter().map(|&m| rank[m]).collect())
        .collect()
}

pub fn shift(set: &BTreeSet<Vec<i64>>, by: i64) -> BTreeSet<Vec<i64>> {
    set.iter()
        .map(|v| v.iter().map(|x| x + by).collect())
        .collect()
}

/// A chain `q_1 < ... < q_r` with one extra element in every block
/// `B(i, j)`, `i < j`, of the padded poset: `x_ij` sits above `q_{i-1}` and
/// below `q_j` (when those exist) and nothing else.
pub fn all_blocks_instance(r: usize) -> Subposet {
    let mut ids: Vec<String> = (1..=r).map(|k| format!("q{k}")).collect();
    let mut relations: Vec<(String, String)> = ids
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    for i in 1..=r + 1 {
        for j in i + 1..=r + 1 {
            let x = format!("x{i}{j}");
            if i >= 2 {
                relations.push((format!("q{}", i - 1), x.clone()));
            }
            if j <= r {
                relations.push((x.clone(), format!("q{j}")));
            }
            ids.push(x);
        }
    }
    let p = build_poset(&ids, &relations).unwrap();
    let q: Vec<String> = (1..=r).map(|k| format!("q{k}")).collect();
    Subposet::new(p, &q).unwrap()
}

/// Number of standard Young tableaux by the hook length formula.
pub fn hook_length_count(shape: &[usize]) -> u64 {
    let n: usize = shape.iter().sum();
    let mut hooks = 1u64;
    for (i, &len) in shape.iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = shape[i + 1..].iter().filter(|&&l| l > j).count();
            hooks *= (arm + leg + 1) as u64;
        }
    }
    (1..=n as u64).product::<u64>() / hooks
}
