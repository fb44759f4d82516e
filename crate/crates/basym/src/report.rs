//! Command dispatch and deterministic JSON/TSV reporting.

use crate::asymptote::{asymptotic_tor_shape, AsymptoticShape};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::groebner::ideal_groebner;
use crate::homalg::{free_resolution, subquotient_presentation, tor_table, Presentation};
use crate::rees::ReesSetup;
use crate::ring::Ring;
use crate::session::Session;
use crate::stanley::module_support_decomposition;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Oracle Betti tables of the ideal powers over the window.
    Betti,
    /// Generators of the multi-Rees kernel.
    Rees,
    /// Reduced Groebner bases of the declared ideals.
    Gb,
    /// Support decomposition of the Tor_ell fiber module.
    Stanley { ell: usize },
    /// The eventual shape certificate.
    Shape { ell: usize },
    /// Shape against the direct oracle over the window; exit 0 iff all match.
    Verify { ell: Option<usize> },
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub text: String,
    pub tsv: String,
    pub json: Value,
    pub all_match: bool,
}

fn degree_json(d: &Degree) -> Value {
    Value::Array(d.flat().into_iter().map(|x| json!(x)).collect())
}

fn group_json(ring: &Ring) -> Value {
    json!({
        "free_rank": ring.group.free_rank,
        "torsion": ring.group.torsion_moduli,
    })
}

fn sorted_degrees(ring: &Ring, set: &BTreeSet<Degree>) -> Vec<Degree> {
    let mut v: Vec<Degree> = set.iter().cloned().collect();
    v.sort_by(|a, b| ring.weight(a).cmp(&ring.weight(b)).then_with(|| a.cmp(b)));
    v
}

fn degree_text(d: &Degree) -> String {
    let flat = d.flat();
    flat.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The grid of exponent vectors in the session window, bounded below by the
/// (componentwise) larger of the window lower bound and `floor`.
fn t_grid(session: &Session, floor: Option<&[i64]>) -> Vec<Vec<i64>> {
    let ranges: Vec<(i64, i64)> = session
        .window
        .t_ranges
        .iter()
        .enumerate()
        .map(|(i, &(lo, hi))| (floor.map_or(lo, |f| lo.max(f[i])), hi))
        .collect();
    let mut grid: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in &ranges {
        let mut next = Vec::new();
        for base in &grid {
            for t in lo..=hi {
                let mut v = base.clone();
                v.push(t);
                next.push(v);
            }
        }
        grid = next;
    }
    grid.retain(|v| v.len() == ranges.len());
    grid
}

fn setup_for(session: &Session) -> Result<ReesSetup> {
    ReesSetup::new(
        session.ring.clone(),
        session.ideals.iter().map(|(_, g)| g.clone()).collect(),
        false,
    )
}

/// Oracle support of Tor_ell of the power at `t`, from a direct minimal
/// resolution of the power module.
pub fn oracle_tor_support(
    setup: &ReesSetup,
    ell: usize,
    t: &[i64],
) -> Result<BTreeSet<Degree>> {
    let pres = setup.power_module_presentation(None, t)?;
    let table = tor_table(&setup.s_ring, &pres, ell)?;
    Ok(table.support(ell).into_iter().collect())
}

pub fn run(session: &Session, command: &Command) -> Result<RunOutput> {
    match command {
        Command::Betti => run_betti(session),
        Command::Rees => run_rees(session),
        Command::Gb => run_gb(session),
        Command::Stanley { ell } => run_stanley(session, *ell),
        Command::Shape { ell } => run_shape(session, *ell),
        Command::Verify { ell } => run_verify(session, *ell),
    }
}

fn run_betti(session: &Session) -> Result<RunOutput> {
    let setup = setup_for(session)?;
    let max_i = session.ring.nvars();
    let grid = t_grid(session, None);
    let tables: Vec<_> = grid
        .par_iter()
        .map(|t| {
            let pres = setup.power_module_presentation(None, t)?;
            tor_table(&setup.s_ring, &pres, max_i)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    let mut tsv = String::from("t\ti\tdegree\tmultiplicity\n");
    let mut entries = Vec::new();
    for (t, table) in grid.iter().zip(&tables) {
        let tstr = t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        writeln!(text, "t = ({tstr})").unwrap();
        let mut keys: Vec<&(usize, Degree)> = table.entries.keys().collect();
        keys.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then_with(|| session.ring.weight(&a.1).cmp(&session.ring.weight(&b.1)))
                .then_with(|| a.1.cmp(&b.1))
        });
        for key in keys {
            let m = table.entries[key];
            writeln!(text, "  beta_{},{} = {}", key.0, key.1, m).unwrap();
            writeln!(tsv, "{tstr}\t{}\t{}\t{}", key.0, degree_text(&key.1), m).unwrap();
            entries.push(json!({
                "t": t,
                "i": key.0,
                "degree": degree_json(&key.1),
                "multiplicity": m,
            }));
        }
    }
    Ok(RunOutput {
        text,
        tsv,
        json: json!({
            "command": "betti",
            "group": group_json(&session.ring),
            "entries": entries,
        }),
        all_match: true,
    })
}

fn run_rees(session: &Session) -> Result<RunOutput> {
    let setup = setup_for(session)?;
    let kernel = setup.rees_ideal()?;
    let mut text = String::new();
    writeln!(text, "rees ideal ({} generators)", kernel.len()).unwrap();
    let mut gens_json = Vec::new();
    let mut tsv = String::from("index\tdegree\tgenerator\n");
    for (i, f) in kernel.iter().enumerate() {
        let printed = setup.r_ring.poly_to_string(f);
        let d = setup.r_ring.poly_degree(f)?;
        writeln!(text, "  {printed}").unwrap();
        writeln!(tsv, "{i}\t{}\t{printed}", degree_text(&d)).unwrap();
        gens_json.push(json!({ "degree": degree_json(&d), "generator": printed }));
    }
    Ok(RunOutput {
        text,
        tsv,
        json: json!({
            "command": "rees",
            "variables": setup.r_ring.vars,
            "generators": gens_json,
        }),
        all_match: true,
    })
}

fn run_gb(session: &Session) -> Result<RunOutput> {
    let mut text = String::new();
    let mut tsv = String::from("ideal\tindex\telement\n");
    let mut items = Vec::new();
    for (name, gens) in &session.ideals {
        let gb = ideal_groebner(&session.ring, gens)?;
        writeln!(text, "reduced basis of {name} ({} elements)", gb.len()).unwrap();
        let printed: Vec<String> =
            gb.iter().map(|f| session.ring.poly_to_string(f)).collect();
        for (i, p) in printed.iter().enumerate() {
            writeln!(text, "  {p}").unwrap();
            writeln!(tsv, "{name}\t{i}\t{p}").unwrap();
        }
        items.push(json!({ "ideal": name, "basis": printed }));
    }
    Ok(RunOutput {
        text,
        tsv,
        json: json!({ "command": "gb", "ideals": items }),
        all_match: true,
    })
}

fn tor_fiber_module(setup: &ReesSetup, ell: usize) -> Result<Presentation> {
    let m = Presentation::free(vec![setup.s_ring.group.zero()]);
    let rees = setup.rees_module_presentation(&m)?;
    let len = (ell + 1).min(setup.r_ring.nvars() + 1);
    let res = free_resolution(&setup.r_ring, &rees, len, true)?;
    let tensored = setup.tensor_residue_field(&res)?;
    subquotient_presentation(&setup.b_ring, &tensored, ell)
}

fn run_stanley(session: &Session, ell: usize) -> Result<RunOutput> {
    let setup = setup_for(session)?;
    let h = tor_fiber_module(&setup, ell)?;
    let decomp = module_support_decomposition(&setup.b_ring, &h)?;
    let mut text = String::new();
    writeln!(
        text,
        "support decomposition of the homological-degree-{ell} fiber module ({} components)",
        decomp.components.len()
    )
    .unwrap();
    let mut tsv = String::from("shift\tgenerators\n");
    let mut comps = Vec::new();
    for c in &decomp.components {
        let gens: Vec<String> = c.gens.iter().map(degree_text).collect();
        writeln!(text, "  ({}) + <{}>", degree_text(&c.shift), gens.join("; ")).unwrap();
        writeln!(tsv, "{}\t{}", degree_text(&c.shift), gens.join(";")).unwrap();
        comps.push(json!({
            "shift": degree_json(&c.shift),
            "generators": c.gens.iter().map(degree_json).collect::<Vec<_>>(),
        }));
    }
    Ok(RunOutput {
        text,
        tsv,
        json: json!({
            "command": "stanley",
            "ell": ell,
            "group": group_json(&setup.b_ring),
            "components": comps,
        }),
        all_match: true,
    })
}

fn shape_json(session: &Session, shape: &AsymptoticShape) -> Value {
    json!({
        "ell": shape.ell,
        "threshold": shape.threshold,
        "components": shape
            .components
            .iter()
            .map(|c| {
                json!({
                    "delta": degree_json(&c.delta),
                    "t0": c.t0,
                    "blocks": c
                        .blocks
                        .iter()
                        .map(|b| b.iter().map(degree_json).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
        "verified_window": {
            "t_ranges": session.window.t_ranges,
            "wcap": session.window.wcap,
        },
    })
}

fn shape_text(shape: &AsymptoticShape) -> String {
    let mut text = String::new();
    writeln!(
        text,
        "eventual shape at homological degree {} (threshold t >= ({}))",
        shape.ell,
        shape.threshold.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    )
    .unwrap();
    for c in &shape.components {
        let blocks: Vec<String> = c
            .blocks
            .iter()
            .map(|b| {
                format!(
                    "[{}]",
                    b.iter().map(degree_text).collect::<Vec<_>>().join("; ")
                )
            })
            .collect();
        writeln!(
            text,
            "  delta=({}) t0=({}) blocks={}",
            degree_text(&c.delta),
            c.t0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            blocks.join(" ")
        )
        .unwrap();
    }
    text
}

fn run_shape(session: &Session, ell: usize) -> Result<RunOutput> {
    let setup = setup_for(session)?;
    let shape = asymptotic_tor_shape(&setup, None, ell)?;
    let mut tsv = String::from("component\tdelta\tt0\tblocks\n");
    for (i, c) in shape.components.iter().enumerate() {
        let blocks: Vec<String> = c
            .blocks
            .iter()
            .map(|b| b.iter().map(degree_text).collect::<Vec<_>>().join(";"))
            .collect();
        writeln!(
            tsv,
            "{i}\t{}\t{}\t{}",
            degree_text(&c.delta),
            c.t0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            blocks.join("|")
        )
        .unwrap();
    }
    Ok(RunOutput {
        text: shape_text(&shape),
        tsv,
        json: json!({ "command": "shape", "shape": shape_json(session, &shape) }),
        all_match: true,
    })
}

fn run_verify(session: &Session, ell: Option<usize>) -> Result<RunOutput> {
    let setup = setup_for(session)?;
    let ells: Vec<usize> = match ell {
        Some(l) => vec![l],
        None => (0..=3).collect(),
    };
    let mut text = String::new();
    let mut tsv = String::from("ell\tt\tdegree\tpredicted\toracle\tmatch\n");
    let mut ell_reports = Vec::new();
    let mut all_match = true;
    for &l in &ells {
        let started = Instant::now();
        let shape = asymptotic_tor_shape(&setup, None, l)?;
        let shape_ms = started.elapsed().as_millis();
        let grid = t_grid(session, Some(&shape.threshold));
        let rows: Vec<(Vec<i64>, BTreeSet<Degree>, BTreeSet<Degree>, u128)> = grid
            .par_iter()
            .map(|t| {
                let begun = Instant::now();
                let predicted = shape.support_at(&setup, t)?;
                let oracle = oracle_tor_support(&setup, l, t)?;
                Ok((t.clone(), predicted, oracle, begun.elapsed().as_millis()))
            })
            .collect::<Result<Vec<_>>>()?;
        writeln!(
            text,
            "ell = {l}: threshold ({}), shape in {shape_ms} ms",
            shape.threshold.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        )
        .unwrap();
        if rows.is_empty() {
            writeln!(
                text,
                "  no window exponents at or above the threshold; nothing to check"
            )
            .unwrap();
        }
        let mut row_json = Vec::new();
        for (t, predicted, oracle, ms) in &rows {
            let matched = predicted == oracle;
            all_match &= matched;
            let tstr = t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            writeln!(
                text,
                "  t=({tstr}): predicted {} degrees, oracle {} degrees, {} ({ms} ms)",
                predicted.len(),
                oracle.len(),
                if matched { "MATCH" } else { "MISMATCH" }
            )
            .unwrap();
            let union: BTreeSet<Degree> = predicted.union(oracle).cloned().collect();
            for d in sorted_degrees(&session.ring, &union) {
                writeln!(
                    tsv,
                    "{l}\t{tstr}\t{}\t{}\t{}\t{}",
                    degree_text(&d),
                    u8::from(predicted.contains(&d)),
                    u8::from(oracle.contains(&d)),
                    u8::from(predicted.contains(&d) == oracle.contains(&d)),
                )
                .unwrap();
            }
            row_json.push(json!({
                "t": t,
                "predicted": sorted_degrees(&session.ring, predicted)
                    .iter()
                    .map(degree_json)
                    .collect::<Vec<_>>(),
                "oracle": sorted_degrees(&session.ring, oracle)
                    .iter()
                    .map(degree_json)
                    .collect::<Vec<_>>(),
                "match": matched,
                "millis": ms,
            }));
        }
        ell_reports.push(json!({
            "ell": l,
            "threshold": shape.threshold,
            "shape": shape_json(session, &shape),
            "rows": row_json,
        }));
    }
    writeln!(text, "overall: {}", if all_match { "ALL MATCH" } else { "MISMATCH" }).unwrap();
    Ok(RunOutput {
        text,
        tsv,
        json: json!({
            "command": "verify",
            "group": group_json(&session.ring),
            "ells": ell_reports,
            "all_match": all_match,
        }),
        all_match,
    })
}

/// Parses a command name as used by the CLI.
pub fn parse_command(name: &str, ell: Option<usize>) -> Result<Command> {
    match name {
        "betti" => Ok(Command::Betti),
        "rees" => Ok(Command::Rees),
        "gb" => Ok(Command::Gb),
        "stanley" => Ok(Command::Stanley { ell: ell.unwrap_or(0) }),
        "shape" => Ok(Command::Shape { ell: ell.unwrap_or(0) }),
        "verify" => Ok(Command::Verify { ell }),
        other => Err(Error::invalid(format!("unknown command `{other}`"))),
    }
}
