//! Fixed instances for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posetohedron_core::fuzz::random_instance;
use posetohedron_core::Subposet;

/// Deterministic random instance; `chain` forces `Q` into a chain.
pub fn instance(seed: u64, n: usize, r: usize, chain: bool) -> Subposet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(&mut rng, n, r.min(n), chain)
}

/// `n` pairwise incomparable elements with the first `r` as `Q`.
pub fn antichain(n: usize, r: usize) -> Subposet {
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let p = posetohedron_core::build_poset::<String>(&ids, &[]).expect("no relations");
    Subposet::from_indices(p, (0..r.min(n)).collect()).expect("antichain labels")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        let a = instance(9, 8, 3, true);
        let b = instance(9, 8, 3, true);
        assert_eq!(a.parent(), b.parent());
        assert!(a.is_chain());
        assert_eq!(antichain(5, 2).len(), 2);
    }
}
