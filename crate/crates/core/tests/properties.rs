mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posetohedron_core::chainpoly::{to_subposet_coords, witness};
use posetohedron_core::complex::{glue, posetohedron_points};
use posetohedron_core::fuzz::random_instance;
use posetohedron_core::poset::{subposet_vector_counts, subposet_vectors};
use posetohedron_core::vertices::{hull_vertices_oracle, vertex_set};
use posetohedron_core::{ChainData, EnumerationLimit, Subposet};

use common::{brute_force_rankings, brute_force_vectors, shift};

fn instance(seed: u64, n: usize, r: usize, chain: bool) -> Subposet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(&mut rng, n, r.min(n), chain)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extensions_are_distinct_and_valid(seed in any::<u64>(), n in 1usize..=7) {
        let q = instance(seed, n, 0, false);
        let p = q.parent();
        let ranks: Vec<Vec<i64>> = p
            .linear_extensions()
            .map(|e| e.ranks().iter().map(|&x| x as i64).collect())
            .collect();
        let distinct: BTreeSet<_> = ranks.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), ranks.len());
        for e in p.linear_extensions() {
            prop_assert!(e.is_valid_for(p));
        }
        let brute: BTreeSet<_> = brute_force_rankings(p).into_iter().collect();
        prop_assert_eq!(distinct, brute);
    }

    #[test]
    fn padding_shifts_vectors_by_one(seed in any::<u64>(), n in 1usize..=7, r in 0usize..=3) {
        let q = instance(seed, n, r, false);
        let raw = subposet_vectors(&q, EnumerationLimit::default()).unwrap();
        let padded = subposet_vectors(&q.padded(), EnumerationLimit::default()).unwrap();
        prop_assert_eq!(shift(&raw, 1), padded);
        prop_assert_eq!(raw, brute_force_vectors(&q));
    }

    #[test]
    fn restrictions_partition_extensions(seed in any::<u64>(), n in 1usize..=7, r in 1usize..=3) {
        let q = instance(seed, n, r, true);
        let counts = subposet_vector_counts(&q, EnumerationLimit::default()).unwrap();
        let total: u64 = counts.values().sum();
        prop_assert_eq!(total, q.parent().linear_extensions().count() as u64);
        for v in counts.keys() {
            prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn lattice_points_are_subposet_vectors(seed in any::<u64>(), n in 1usize..=8, r in 1usize..=3) {
        let q = instance(seed, n, r, true);
        let cd = ChainData::from_subposet(&q).unwrap();
        let g = cd.npq(16).unwrap();
        let points = g.lattice_points().unwrap();
        let vectors: BTreeSet<Vec<i64>> = points.iter().map(|t| to_subposet_coords(t)).collect();
        prop_assert_eq!(&vectors, &shift(&brute_force_vectors(&q), 1));
        for t in &points {
            let w = witness(&cd, t).unwrap();
            prop_assert_eq!(&cd.m_vector(w.extension()), t);
        }
    }

    #[test]
    fn subdivision_vertices_are_hull_vertices(seed in any::<u64>(), n in 1usize..=8, r in 1usize..=3) {
        let q = instance(seed, n, r, true);
        let g = ChainData::from_subposet(&q).unwrap().npq(16).unwrap();
        let vertices: BTreeSet<Vec<i64>> = vertex_set(&g).unwrap().into_iter().map(|v| v.t).collect();
        prop_assert_eq!(vertices, hull_vertices_oracle(&g.lattice_points().unwrap()));
    }

    #[test]
    fn blocks_cover_subposet_vectors(seed in any::<u64>(), n in 2usize..=7, r in 2usize..=3) {
        let q = instance(seed, n, r, false);
        glue(&q).unwrap();
        prop_assert_eq!(posetohedron_points(&q).unwrap(), shift(&brute_force_vectors(&q), 1));
    }
}
