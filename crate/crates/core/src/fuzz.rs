//! Seeded random instances and the property checks run on them.
//!
//! A case draws a random DAG on `n` elements (edge `e_i -> e_j`, `i < j`,
//! with fixed probability), closes it, and picks `Q`. Chain cases force the
//! picked elements into a chain and check oracle equality, witnesses and
//! vertices; general cases leave them as drawn and check the glued complex.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chainpoly::{witness, ChainData, GPerm, DEFAULT_DIM_CAP};
use crate::complex::{glue, posetohedron_points};
use crate::error::Result;
use crate::io::{Instance, InstanceJson};
use crate::poset::{build_poset, subposet_vectors, EnumerationLimit, Subposet};
use crate::vertices::{hull_vertices_oracle, vertex_set};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    OracleEquality,
    WitnessSoundness,
    VertexHull,
    Gluing,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Property::OracleEquality => "oracle equality",
            Property::WitnessSoundness => "witness soundness",
            Property::VertexHull => "vertex vs hull",
            Property::Gluing => "gluing",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    /// Largest `|P|` (unpadded).
    pub max_elements: usize,
    pub max_r: usize,
    /// Which properties to run; chain cases and general cases alternate when
    /// both kinds are enabled.
    pub chain_cases: bool,
    pub general_cases: bool,
    pub check_vertices: bool,
    /// Replace every chain polytope by its sign-flipped mutant before
    /// enumerating lattice points.
    pub mutate: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            count: 100,
            max_elements: 8,
            max_r: 3,
            chain_cases: true,
            general_cases: true,
            check_vertices: true,
            mutate: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzFailure {
    pub case: usize,
    pub property: Property,
    pub detail: String,
    pub instance: InstanceJson,
    /// Smallest failing instance found by deleting elements and relations.
    pub minimized: InstanceJson,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub cases: usize,
    pub chain_cases: usize,
    pub general_cases: usize,
    pub lattice_points: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub type Check = std::result::Result<(), (Property, String)>;

/// Random poset on `e0..e{n-1}` with a labelled `Q` of size `r`.
pub fn random_instance(rng: &mut impl Rng, n: usize, r: usize, chain: bool) -> Subposet {
    let density: f64 = rng.gen_range(0.1..0.45);
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut picked: Vec<usize> = (0..n).collect();
    picked.shuffle(rng);
    picked.truncate(r.min(n));
    picked.sort_unstable();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                relations.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    if chain {
        for w in picked.windows(2) {
            relations.push((ids[w[0]].clone(), ids[w[1]].clone()));
        }
    }
    let poset = build_poset(&ids, &relations).expect("edges go forward");
    Subposet::from_indices(poset, picked).expect("index order is a linear extension")
}

fn describe(e: impl fmt::Display) -> String {
    e.to_string()
}

fn first_difference(a: &BTreeSet<Vec<i64>>, b: &BTreeSet<Vec<i64>>) -> String {
    match (a.difference(b).next(), b.difference(a).next()) {
        (Some(x), _) => format!("{x:?} only in the first set ({} vs {})", a.len(), b.len()),
        (_, Some(x)) => format!("{x:?} only in the second set ({} vs {})", a.len(), b.len()),
        _ => "sets agree".into(),
    }
}

/// Lattice points of `N(P, Q)` against the oracle, a witness for every point,
/// and optionally subdivision vertices against hull vertices. Returns the
/// number of lattice points.
pub fn check_chain_instance(
    q: &Subposet,
    vertices: bool,
    mutate: bool,
) -> std::result::Result<usize, (Property, String)> {
    let oracle_err = |e: crate::Error| (Property::OracleEquality, describe(e));
    let cd = ChainData::from_subposet(q).map_err(oracle_err)?;
    let mut g: GPerm = cd.npq(DEFAULT_DIM_CAP).map_err(oracle_err)?;
    if mutate {
        g = g.with_flipped_z_signs();
    }
    let points = g.lattice_points().map_err(oracle_err)?;
    let oracle = cd
        .oracle_points(EnumerationLimit::unlimited())
        .map_err(oracle_err)?;
    if points != oracle {
        return Err((
            Property::OracleEquality,
            format!("lattice vs oracle: {}", first_difference(&points, &oracle)),
        ));
    }
    for t in &points {
        let w = witness(&cd, t).map_err(|e| (Property::WitnessSoundness, describe(e)))?;
        if cd.m_vector(w.extension()) != *t || !w.extension().is_valid_for(cd.padded()) {
            return Err((Property::WitnessSoundness, format!("bad witness for {t:?}")));
        }
    }
    if vertices {
        let from_subdivisions: BTreeSet<Vec<i64>> = vertex_set(&g)
            .map_err(|e| (Property::VertexHull, describe(e)))?
            .into_iter()
            .map(|v| v.t)
            .collect();
        let hull = hull_vertices_oracle(&points);
        if from_subdivisions != hull {
            return Err((
                Property::VertexHull,
                format!(
                    "subdivisions vs hull: {}",
                    first_difference(&from_subdivisions, &hull)
                ),
            ));
        }
    }
    Ok(points.len())
}

/// Certified gluing plus coverage of the oracle set. Returns the number of
/// subposet vectors.
pub fn check_general_instance(q: &Subposet) -> std::result::Result<usize, (Property, String)> {
    let err = |e: crate::Error| (Property::Gluing, describe(e));
    glue(q).map_err(err)?;
    let union = posetohedron_points(q).map_err(err)?;
    let oracle = subposet_vectors(&q.padded(), EnumerationLimit::unlimited()).map_err(err)?;
    if union != oracle {
        return Err((
            Property::Gluing,
            format!("blocks vs oracle: {}", first_difference(&union, &oracle)),
        ));
    }
    Ok(union.len())
}

fn rebuild(json: &InstanceJson) -> Option<Subposet> {
    Instance::from_json(json).ok().map(|i| i.q)
}

/// Greedily drops non-`Q` elements, then cover relations, while `fails`
/// still holds.
pub fn minimize(q: &Subposet, fails: impl Fn(&Subposet) -> bool) -> InstanceJson {
    let mut best = Instance::new(q.clone()).to_json();
    loop {
        let mut improved = false;
        let members: BTreeSet<String> = best.q.iter().cloned().collect();
        for e in best.elements.clone() {
            if members.contains(&e) {
                continue;
            }
            let mut trial = best.clone();
            trial.elements.retain(|x| *x != e);
            trial.relations.retain(|(a, b)| *a != e && *b != e);
            if rebuild(&trial).is_some_and(|s| fails(&s)) {
                best = trial;
                improved = true;
            }
        }
        for k in (0..best.relations.len()).rev() {
            let mut trial = best.clone();
            trial.relations.remove(k);
            if rebuild(&trial).is_some_and(|s| fails(&s)) {
                best = trial;
                improved = true;
            }
        }
        if !improved {
            return best;
        }
    }
}

/// Runs `config.count` cases. Case `k` uses its own generator seeded from
/// `(seed, k)`, so any case can be replayed alone.
pub fn run(config: &FuzzConfig) -> Result<FuzzSummary> {
    let mut summary = FuzzSummary {
        seed: config.seed,
        ..FuzzSummary::default()
    };
    for case in 0..config.count {
        let mut rng = case_rng(config.seed, case);
        let chain = match (config.chain_cases, config.general_cases) {
            (true, false) => true,
            (false, true) => false,
            _ => case % 2 == 0,
        };
        let n = rng.gen_range(1..=config.max_elements.max(1));
        let r = rng.gen_range(0..=config.max_r.min(n));
        let q = random_instance(&mut rng, n, r, chain);
        summary.cases += 1;
        let outcome = if chain {
            summary.chain_cases += 1;
            check_chain_instance(&q, config.check_vertices, config.mutate)
        } else {
            summary.general_cases += 1;
            check_general_instance(&q)
        };
        match outcome {
            Ok(points) => summary.lattice_points += points,
            Err((property, detail)) => {
                let fails = |s: &Subposet| {
                    if chain {
                        s.is_chain()
                            && matches!(check_chain_instance(s, config.check_vertices, config.mutate), Err((p, _)) if p == property)
                    } else {
                        matches!(check_general_instance(s), Err((p, _)) if p == property)
                    }
                };
                summary.failures.push(FuzzFailure {
                    case,
                    property,
                    detail,
                    instance: Instance::new(q.clone()).to_json(),
                    minimized: minimize(&q, fails),
                });
            }
        }
    }
    Ok(summary)
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let config = FuzzConfig {
            count: 6,
            max_elements: 5,
            ..FuzzConfig::default()
        };
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        assert!(a.passed());
        assert_eq!(a.lattice_points, b.lattice_points);
        assert_eq!((a.chain_cases, a.general_cases), (3, 3));
    }

    #[test]
    fn zero_cases_pass() {
        let summary = run(&FuzzConfig {
            count: 0,
            ..FuzzConfig::default()
        })
        .unwrap();
        assert!(summary.passed());
        assert_eq!(summary.cases, 0);
    }

    #[test]
    fn random_chain_is_a_chain() {
        let mut rng = case_rng(7, 0);
        for _ in 0..20 {
            let q = random_instance(&mut rng, 7, 3, true);
            assert!(q.is_chain());
            assert_eq!(q.len(), 3);
        }
    }

    #[test]
    fn mutant_is_caught_and_minimized() {
        let summary = run(&FuzzConfig {
            count: 100,
            general_cases: false,
            check_vertices: false,
            mutate: true,
            ..FuzzConfig::default()
        })
        .unwrap();
        let first = summary.failures.first().expect("mutant must fail");
        assert!(first.case < 100);
        assert_eq!(first.property, Property::OracleEquality);
        assert!(first.minimized.elements.len() <= first.instance.elements.len());
    }
}
