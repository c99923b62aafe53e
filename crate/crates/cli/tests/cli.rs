use std::path::PathBuf;
use std::process::{Command, Output};

use posetohedron_core::chainpoly::{GPerm, GPermJson};
use posetohedron_core::complex::ComplexJson;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetohedron"))
        .args(args)
        .env_remove("POSETOHEDRON_MAX_P")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn temp_file(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("posetohedron-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

fn vectors_of(v: &Value) -> Vec<Vec<i64>> {
    v["vectors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| serde_json::from_value(row["x"].clone()).unwrap())
        .collect()
}

#[test]
fn validate_pentagon() {
    let out = run(&["validate", &fixture("pentagon")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["r"], 2);
    assert_eq!(v["padded_elements"], 6);
}

#[test]
fn input_errors_exit_2() {
    let cyclic = temp_file(
        "cyclic.json",
        r#"{"elements":["a","b"],"relations":[["a","b"],["b","a"]]}"#,
    );
    let out = run(&["validate", &cyclic]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));

    let labels = temp_file(
        "labels.json",
        r#"{"elements":["a","b"],"relations":[["a","b"]],"q":["b","a"]}"#,
    );
    let out = run(&["validate", &labels]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("labels out of order"));

    let broken = temp_file("broken.json", "{\"elements\": [\"a\",\n  ]}");
    let out = run(&["validate", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = run(&["polytope", &fixture("nonconvex")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pentagon_vectors_both_conventions() {
    let padded = json(&run(&["vectors", &fixture("pentagon")]));
    assert_eq!(padded["agree"], true);
    let pv = vectors_of(&padded);
    assert_eq!(
        pv,
        vec![vec![2, 4], vec![2, 5], vec![3, 4], vec![3, 5], vec![4, 5]]
    );
    let raw = json(&run(&["vectors", "--raw", &fixture("pentagon")]));
    let rv = vectors_of(&raw);
    for (p, r) in pv.iter().zip(&rv) {
        assert!(p.iter().zip(r).all(|(a, b)| a - b == 1));
    }
}

#[test]
fn nonconvex_vectors_grouped_by_chamber() {
    let out = run(&["vectors", "--format", "csv", &fixture("nonconvex")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let groups: std::collections::BTreeSet<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(groups.into_iter().collect::<Vec<_>>(), vec!["w=12", "w=21"]);
}

#[test]
fn empty_q_has_one_empty_vector() {
    let file = temp_file("empty.json", r#"{"elements":["a","b"]}"#);
    let v = json(&run(&["vectors", &file]));
    assert_eq!(vectors_of(&v), vec![Vec::<i64>::new()]);
}

#[test]
fn polytope_json_round_trips() {
    let out = run(&["polytope", &fixture("pentagon")]);
    let text = stdout(&out);
    let parsed: GPermJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.c["1-1"], 2);
    assert_eq!(parsed.z["1,2,3"], 6);
    let again = GPerm::from_json(&parsed).unwrap().to_json();
    assert_eq!(serde_json::to_string_pretty(&again).unwrap() + "\n", text);
}

#[test]
fn complex_json_round_trips() {
    let out = run(&["complex", &fixture("nonconvex")]);
    let text = stdout(&out);
    let parsed: ComplexJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.blocks.len(), 2);
    assert_eq!(parsed.connectivity.edges.len(), 1);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    let svg = stdout(&run(&["complex", "--format", "svg", &fixture("nonconvex")]));
    assert!(svg.starts_with("<svg"));
}

#[test]
fn degenerate_vertices() {
    let v = json(&run(&["vertices", &fixture("b13-zero")]));
    let formulas: Vec<&str> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["formula"].as_str().unwrap())
        .collect();
    assert_eq!(
        formulas,
        vec![
            "(b11, b12+b22, b23+b33)",
            "(b11, b12+b22+b23, b33)",
            "(b11+b12, b22, b23+b33)",
            "(b11+b12, b22+b23, b33)",
        ]
    );
}

#[test]
fn witness_for_2_4() {
    let out = run(&["witness", "--point", "2,4", &fixture("pentagon")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ranks"]["a"], 2);
    assert_eq!(v["ranks"]["b"], 4);
    let out = run(&["witness", "--raw", "--point", "1,3", &fixture("pentagon")]);
    assert_eq!(json(&out)["ranks"]["b"], 3);
    let out = run(&["witness", "--point", "1,3", &fixture("pentagon")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn size_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_posetohedron"))
        .args(["vectors", &fixture("chain3-blocks")])
        .env("POSETOHEDRON_MAX_P", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_posetohedron"))
        .args(["vectors", "--force", &fixture("chain3-blocks")])
        .env("POSETOHEDRON_MAX_P", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fuzz_runs() {
    let out = run(&["fuzz", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let args = [
        "fuzz", "--seed", "1", "--count", "100", "--size", "8", "--labels", "3",
    ];
    let first = run(&args);
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(json(&first)["failures"].as_array().unwrap().len(), 0);
    assert_eq!(stdout(&first), stdout(&run(&args)));
}

#[test]
fn fuzz_catches_mutant() {
    let out = run(&["fuzz", "--count", "100", "--chain-only", "--mutate"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let first = &v["failures"][0];
    assert!(first["case"].as_u64().unwrap() < 100);
    assert!(first["minimized"]["elements"].is_array());
}
