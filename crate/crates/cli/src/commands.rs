use std::collections::{BTreeMap, BTreeSet};
use std::io::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use posetohedron_core::chainpoly::{
    from_subposet_coords, to_subposet_coords, witness as find_witness,
};
use posetohedron_core::complex::{glue, valid_chambers, Chamber};
use posetohedron_core::fuzz::{self, FuzzConfig};
use posetohedron_core::io::{lattice_points_csv, vectors_csv, Instance};
use posetohedron_core::poset::{subposet_vectors, HAT0, HAT1};
use posetohedron_core::svg::{complex_svg, staircases_svg};
use posetohedron_core::vertices::{format_formula, vertex_extension, vertex_set};
use posetohedron_core::{ChainData, Error, Subposet};

use crate::{Format, RunConfig, Verdict};

fn load(config: &RunConfig, file: &Path) -> Result<Instance> {
    let inst = Instance::load(file).with_context(|| format!("reading {}", file.display()))?;
    if inst.q.len() > config.max_r {
        return Err(Error::DimensionTooLarge {
            dim: inst.q.len(),
            cap: config.max_r,
        }
        .into());
    }
    Ok(inst)
}

fn chain_data(q: &Subposet) -> Result<ChainData> {
    Ok(ChainData::from_subposet(q)?)
}

/// Writes to stdout; a reader that went away (`| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn print_json(value: &impl Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

fn unsupported(config: &RunConfig, command: &str) -> anyhow::Error {
    Error::Input(
        format!(
            "--format {:?} is not available for {command}",
            config.format
        )
        .to_lowercase(),
    )
    .into()
}

fn shifted(x: &[i64], offset: i64) -> Vec<i64> {
    x.iter().map(|v| v - offset).collect()
}

fn chamber_name(w: &Chamber) -> String {
    let digits: Vec<String> = w.order().iter().map(usize::to_string).collect();
    format!("w={}", digits.join(""))
}

pub fn validate(config: &RunConfig, file: &Path) -> Result<Verdict> {
    let inst = load(config, file)?;
    let chain = inst.q.is_chain();
    if chain {
        chain_data(&inst.q)?;
    }
    if config.format != Format::Json {
        return Err(unsupported(config, "validate"));
    }
    let p = inst.poset();
    print_json(&json!({
        "ok": true,
        "elements": p.len(),
        "padded_elements": p.len() + 2,
        "covers": p.covers().len(),
        "r": inst.q.len(),
        "q": inst.q.member_ids(),
        "chain": chain,
        "chambers": valid_chambers(&inst.q).len(),
    }))?;
    Ok(Verdict::Agree)
}

pub fn vectors(config: &RunConfig, file: &Path) -> Result<Verdict> {
    let inst = load(config, file)?;
    let q = &inst.q;
    let oracle = subposet_vectors(&q.padded(), config.limit)?;

    // every lattice point together with the chamber whose block holds it
    let mut rows: Vec<(Chamber, Vec<i64>)> = Vec::new();
    if q.is_chain() {
        let cd = chain_data(q)?;
        let g = cd.npq(config.max_r + 1)?;
        for t in g.lattice_points()? {
            rows.push((Chamber::identity(q.len()), to_subposet_coords(&t)));
        }
    } else {
        for block in glue(q)?.blocks {
            for x in block.points {
                rows.push((block.chamber.clone(), x));
            }
        }
    }
    rows.sort_by(|a, b| a.1.cmp(&b.1));
    let lattice: BTreeSet<Vec<i64>> = rows.iter().map(|(_, x)| x.clone()).collect();
    let agree = lattice == oracle && lattice.len() == rows.len();
    let off = config.offset();

    match config.format {
        Format::Json => print_json(&json!({
            "convention": config.convention(),
            "r": q.len(),
            "chain": q.is_chain(),
            "agree": agree,
            "oracle_count": oracle.len(),
            "lattice_count": rows.len(),
            "vectors": rows
                .iter()
                .map(|(w, x)| json!({"chamber": w.order(), "x": shifted(x, off)}))
                .collect::<Vec<_>>(),
            "only_oracle": oracle.difference(&lattice).map(|x| shifted(x, off)).collect::<Vec<_>>(),
            "only_lattice": lattice.difference(&oracle).map(|x| shifted(x, off)).collect::<Vec<_>>(),
        }))?,
        Format::Csv => emit(&vectors_csv(
            q.len(),
            rows.iter().map(|(w, x)| (Some(chamber_name(w)), x)),
            config.raw,
        ))?,
        Format::Svg => return Err(unsupported(config, "vectors")),
    }
    if !agree {
        eprintln!(
            "mismatch: {} oracle vectors, {} lattice points",
            oracle.len(),
            rows.len()
        );
        return Ok(Verdict::Mismatch);
    }
    Ok(Verdict::Agree)
}

pub fn polytope(config: &RunConfig, file: &Path) -> Result<Verdict> {
    let inst = load(config, file)?;
    let cd = chain_data(&inst.q)?;
    let g = cd.npq(config.max_r + 1)?;
    match config.format {
        Format::Json => print_json(&g.to_json())?,
        Format::Csv => emit(&lattice_points_csv(&g.lattice_points()?, g.dim()))?,
        Format::Svg => return Err(unsupported(config, "polytope")),
    }
    Ok(Verdict::Agree)
}

#[derive(Serialize)]
struct VertexRow {
    t: Vec<i64>,
    x: Vec<i64>,
    formula: String,
    subdivisions: Vec<String>,
    extension: Vec<String>,
}

pub fn vertices(config: &RunConfig, file: &Path) -> Result<Verdict> {
    let inst = load(config, file)?;
    let cd = chain_data(&inst.q)?;
    let g = cd.npq(config.max_r + 1)?;
    let b = cd.b_matrix();
    let mut rows = Vec::new();
    let mut verdict = Verdict::Agree;
    for v in vertex_set(&g)? {
        let first = &v.provenance[0];
        let cells: Vec<Vec<(usize, usize)>> = first
            .rects()
            .iter()
            .map(|r| {
                r.iter()
                    .copied()
                    .filter(|&(i, j)| b[i - 1][j - 1] > 0)
                    .collect()
            })
            .collect();
        let ext = vertex_extension(&cd, first)?;
        if cd.m_vector(&ext) != v.t {
            eprintln!(
                "mismatch: rectangle filling for {:?} gives {:?}",
                v.t,
                cd.m_vector(&ext)
            );
            verdict = Verdict::Mismatch;
        }
        let p = cd.padded();
        rows.push((
            VertexRow {
                x: shifted(&to_subposet_coords(&v.t), config.offset()),
                t: v.t.clone(),
                formula: format_formula(&cells),
                subdivisions: v.provenance.iter().map(|s| s.to_text()).collect(),
                extension: ext
                    .order()
                    .into_iter()
                    .map(|e| p.id(e).to_string())
                    .filter(|id| !config.raw || (id != HAT0 && id != HAT1))
                    .collect(),
            },
            first.clone(),
        ));
    }
    match config.format {
        Format::Json => print_json(&json!({
            "convention": config.convention(),
            "dim": g.dim(),
            "b": b,
            "vertices": rows.iter().map(|(r, _)| r).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let dim = g.dim();
            let mut header: Vec<String> = (1..=dim).map(|k| format!("t{k}")).collect();
            header.extend((1..dim).map(|k| format!("q{k}")));
            header.push("formula".into());
            let mut text = header.join(",") + "\n";
            for (r, _) in &rows {
                let nums: Vec<String> = r.t.iter().chain(&r.x).map(i64::to_string).collect();
                text += &format!("{},\"{}\"\n", nums.join(","), r.formula);
            }
            emit(&text)?;
        }
        Format::Svg => {
            let items: Vec<(String, &_)> =
                rows.iter().map(|(r, s)| (r.formula.clone(), s)).collect();
            emit(&staircases_svg(&items, &b))?;
        }
    }
    Ok(verdict)
}

fn parse_point(text: &str) -> Result<Vec<i64>> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| {
            s.trim().parse::<i64>().map_err(|_| {
                Error::Input(format!("--point: `{}` is not an integer", s.trim())).into()
            })
        })
        .collect()
}

pub fn witness(config: &RunConfig, file: &Path, point: &str) -> Result<Verdict> {
    let inst = load(config, file)?;
    let cd = chain_data(&inst.q)?;
    let x = parse_point(point)?;
    if x.len() != inst.q.len() {
        return Err(Error::DimensionMismatch {
            expected: inst.q.len(),
            got: x.len(),
        }
        .into());
    }
    let padded: Vec<i64> = x.iter().map(|v| v + config.offset()).collect();
    let t = from_subposet_coords(&padded, cd.total());
    let w = find_witness(&cd, &t).map_err(|e| match e {
        Error::NonLatticePoint(_) => Error::NonLatticePoint(x.clone()),
        other => other,
    })?;
    if config.format != Format::Json {
        return Err(unsupported(config, "witness"));
    }
    let p = cd.padded();
    let keep = |e: usize| !config.raw || p.padding().is_none_or(|(h0, h1)| e != h0 && e != h1);
    let order: Vec<usize> = w
        .extension()
        .order()
        .into_iter()
        .filter(|&e| keep(e))
        .collect();
    let ranks: BTreeMap<&str, i64> = order
        .iter()
        .map(|&e| (p.id(e), w.extension().rank(e) as i64 - config.offset()))
        .collect();
    let parts: BTreeMap<&str, usize> = order.iter().map(|&e| (p.id(e), w.part(e))).collect();
    print_json(&json!({
        "convention": config.convention(),
        "point": x,
        "t": t,
        "extension": order.iter().map(|&e| p.id(e)).collect::<Vec<_>>(),
        "ranks": ranks,
        "parts": parts,
        "switches": w.switches(),
    }))?;
    Ok(Verdict::Agree)
}

pub fn complex(config: &RunConfig, file: &Path) -> Result<Verdict> {
    let inst = load(config, file)?;
    let bc = glue(&inst.q)?;
    match config.format {
        Format::Json => print_json(&bc.to_json(config.raw))?,
        Format::Csv => {
            let rows = bc.blocks.iter().flat_map(|b| {
                b.points
                    .iter()
                    .map(move |x| (Some(chamber_name(&b.chamber)), x))
            });
            emit(&vectors_csv(inst.q.len(), rows, config.raw))?;
        }
        Format::Svg => match complex_svg(&bc) {
            Some(svg) => emit(&svg)?,
            None => {
                return Err(Error::Input(format!(
                    "svg needs exactly two labels, got {}",
                    inst.q.len()
                ))
                .into())
            }
        },
    }
    Ok(Verdict::Agree)
}

pub fn fuzz(config: &RunConfig, fuzz: FuzzConfig) -> Result<Verdict> {
    if config.format != Format::Json {
        return Err(unsupported(config, "fuzz"));
    }
    if fuzz.max_elements > config.limit.max_elements && !config.limit.force {
        bail!(Error::TooLarge {
            size: fuzz.max_elements,
            cap: config.limit.max_elements
        });
    }
    let summary = fuzz::run(&fuzz)?;
    print_json(&summary)?;
    if summary.passed() {
        Ok(Verdict::Agree)
    } else {
        let first = &summary.failures[0];
        eprintln!(
            "{} of {} cases failed; first: case {} ({}): {}",
            summary.failures.len(),
            summary.cases,
            first.case,
            first.property,
            first.detail
        );
        Ok(Verdict::Mismatch)
    }
}
