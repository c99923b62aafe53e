//! Instance files and tabular output.
//!
//! An instance is `{"elements": [...], "relations": [[lo, hi], ...], "q": [...]}`.
//! Relations need not be transitively closed; export writes the cover
//! relations in element order so that export, import, export is stable.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chainpoly::to_subposet_coords;
use crate::error::{Error, Result};
use crate::poset::{build_poset, Poset, Subposet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
    #[serde(default)]
    pub q: Vec<String>,
}

/// A poset with a labelled subposet.
#[derive(Clone, Debug)]
pub struct Instance {
    pub q: Subposet,
}

impl Instance {
    pub fn new(q: Subposet) -> Self {
        Self { q }
    }

    pub fn poset(&self) -> &Poset {
        self.q.parent()
    }

    pub fn from_json(json: &InstanceJson) -> Result<Self> {
        let poset = build_poset(&json.elements, &json.relations)?;
        let q = Subposet::new(poset, &json.q)?;
        Ok(Self { q })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> InstanceJson {
        let p = self.poset();
        InstanceJson {
            elements: p.ids().to_vec(),
            relations: p
                .covers()
                .into_iter()
                .map(|(a, b)| (p.id(a).to_string(), p.id(b).to_string()))
                .collect(),
            q: self.q.member_ids().into_iter().map(String::from).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data serializes") + "\n"
    }
}

fn join(row: &[i64]) -> String {
    row.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Lattice points of a chain polytope, one row per point: `t_1..t_{r+1}`,
/// then padded ranks `c_1..c_r`, then raw ranks.
pub fn lattice_points_csv(points: &BTreeSet<Vec<i64>>, dim: usize) -> String {
    let mut out = String::new();
    let mut header: Vec<String> = (1..=dim).map(|k| format!("t{k}")).collect();
    header.extend((1..dim).map(|k| format!("c{k}")));
    header.extend((1..dim).map(|k| format!("raw{k}")));
    out.push_str(&header.join(","));
    out.push('\n');
    for t in points {
        let c = to_subposet_coords(t);
        let raw: Vec<i64> = c.iter().map(|x| x - 1).collect();
        let row: Vec<i64> = t.iter().chain(&c).chain(&raw).copied().collect();
        out.push_str(&join(&row));
        out.push('\n');
    }
    out
}

/// Subposet vectors with an optional group column (e.g. a chamber id).
pub fn vectors_csv<'a, I>(r: usize, rows: I, raw: bool) -> String
where
    I: IntoIterator<Item = (Option<String>, &'a Vec<i64>)>,
{
    let offset = i64::from(raw);
    let mut out = String::new();
    let mut header: Vec<String> = vec!["group".into()];
    header.extend((1..=r).map(|k| format!("q{k}")));
    out.push_str(&header.join(","));
    out.push('\n');
    for (group, x) in rows {
        let shifted: Vec<i64> = x.iter().map(|v| v - offset).collect();
        let group = group.unwrap_or_default();
        if r == 0 {
            let _ = writeln!(out, "{group}");
        } else {
            let _ = writeln!(out, "{group},{}", join(&shifted));
        }
    }
    out
}
