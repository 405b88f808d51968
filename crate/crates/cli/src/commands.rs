//! The five subcommands. Each returns an [`Output`] carrying both the text
//! rendering and the JSON value; the binary prints one of them.

use std::fmt::Write;
use std::path::Path;

use eqalg_core::burnside::BurnsideRing;
use eqalg_core::gsets::table_of_marks;
use eqalg_core::indexing::{enumerate_masks, enumerate_with, norm_category, Algorithm, PairSpace};
use eqalg_core::mackey::{check_axioms_with, geometric_fixed_points, split};
use eqalg_core::normed::{validate_diagram_with, DiagramReport};
use eqalg_core::par::Exec;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{matrix, rational};
use crate::workspace::{pair_list, Workspace};

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

/// Largest listing `transfer-systems --list` prints.
pub const LIST_CAP: usize = 100_000;
/// Largest lattice `transfer-systems --dot` draws.
pub const DOT_CAP: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListMode {
    Count,
    List,
    Dot,
}

pub fn marks(ws: &mut Workspace, group: &Path) -> Result<Output, CliError> {
    let loaded = ws.load_group(group)?;
    let g = loaded.value;
    let table = table_of_marks(&g);
    let ring = BurnsideRing::new(g.clone());
    let idempotents = ring.rational_idempotents();

    let orders: Vec<usize> = (0..g.num_classes()).map(|c| g.class_rep(c).order()).collect();
    let width = table.iter().flatten().map(|m| m.to_string().len()).max().unwrap_or(1).max(4);
    let mut text = String::new();
    let _ = write!(text, "{:>8}", "");
    for c in 0..orders.len() {
        let _ = write!(text, " {:>width$}", format!("H{c}"));
    }
    text.push('\n');
    for (i, row) in table.iter().enumerate() {
        let _ = write!(text, "{:>8}", format!("G/H{i}"));
        for m in row {
            let _ = write!(text, " {m:>width$}");
        }
        text.push('\n');
    }
    text.push('\n');
    for (c, e) in idempotents.iter().enumerate() {
        let _ = writeln!(text, "e_{c} (|H{c}| = {}) = {e:?}", orders[c]);
    }

    let json = json!({
        "input": loaded.digest,
        "classes": orders.iter().enumerate().map(|(c, o)| json!({"index": c, "order": o})).collect::<Vec<_>>(),
        "marks": table,
        "idempotents": idempotents.iter().enumerate().map(|(c, e)| json!({
            "class": c,
            "coeffs": e.coeffs().iter().enumerate()
                .filter(|(_, x)| **x != eqalg_core::Q::default())
                .map(|(i, x)| (i.to_string(), Value::String(rational(x))))
                .collect::<serde_json::Map<_, _>>(),
        })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

/// Covering relations among member masks sorted by size.
fn hasse_edges(masks: &[u128]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (b, &mb) in masks.iter().enumerate() {
        let below: Vec<usize> = (0..b).filter(|&a| masks[a] & mb == masks[a] && masks[a] != mb).collect();
        for &a in &below {
            let covered = below.iter().any(|&c| c != a && masks[a] & masks[c] == masks[a] && masks[a] != masks[c]);
            if !covered {
                edges.push((a, b));
            }
        }
    }
    edges
}

pub fn transfer_systems(ws: &mut Workspace, group: &Path, mode: ListMode, algorithm: Algorithm, exec: Exec) -> Result<Output, CliError> {
    let loaded = ws.load_group(group)?;
    let g = loaded.value;
    let limits = ws.limits();
    if g.order() > limits.max_enumeration_order {
        return Err(eqalg_core::Error::OrderCapExceeded {
            order: g.order(),
            cap: limits.max_enumeration_order,
        }
        .into());
    }
    let space = PairSpace::new(g.clone());
    match mode {
        ListMode::Count => {
            let count = enumerate_masks(&space, algorithm, exec)?.len();
            Ok(Output {
                text: format!("{count}\n"),
                json: json!({"input": loaded.digest, "pair_orbits": space.len(), "count": count}),
            })
        }
        ListMode::List => {
            let count = enumerate_masks(&space, algorithm, exec)?.len();
            if count > LIST_CAP {
                return Err(CliError::Cap(format!("{count} transfer systems exceed the listing cap {LIST_CAP}")));
            }
            let systems: Vec<Vec<Vec<usize>>> = enumerate_with(&g, algorithm, limits, exec)?.iter().map(pair_list).collect();
            let mut text = String::new();
            for (i, pairs) in systems.iter().enumerate() {
                let shown: Vec<String> = pairs.iter().map(|p| format!("{p:?}")).collect();
                let _ = writeln!(text, "{i}: {{{}}}", shown.join(", "));
            }
            Ok(Output {
                text,
                json: json!({"input": loaded.digest, "count": systems.len(), "systems": systems}),
            })
        }
        ListMode::Dot => {
            let masks = enumerate_masks(&space, algorithm, exec)?;
            if masks.len() > DOT_CAP {
                return Err(CliError::Cap(format!("{} transfer systems exceed the drawing cap {DOT_CAP}", masks.len())));
            }
            let edges = hasse_edges(&masks);
            let mut text = String::from("digraph transfer_systems {\n");
            for (i, m) in masks.iter().enumerate() {
                let _ = writeln!(text, "  T{i} [label=\"T{i} ({})\"];", m.count_ones());
            }
            for &(a, b) in &edges {
                let _ = writeln!(text, "  T{a} -> T{b};");
            }
            text.push_str("}\n");
            Ok(Output {
                json: json!({"input": loaded.digest, "count": masks.len(), "edges": edges, "dot": text}),
                text,
            })
        }
    }
}

pub fn split_cmd(ws: &mut Workspace, mackey: &Path, exec: Exec) -> Result<Output, CliError> {
    let loaded = ws.load_mackey(mackey)?;
    let m = loaded.value;
    let report = check_axioms_with(&m, exec);
    if !report.passed() {
        let lines: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
        let mut text = format!("{} of {} checks failed\n", lines.len(), report.checks);
        for l in &lines {
            let _ = writeln!(text, "  {l}");
        }
        let failures: Vec<Value> = report
            .failures
            .iter()
            .map(|f| {
                json!({
                    "axiom": format!("{:?}", f.axiom),
                    "classes": [f.classes.0, f.classes.1, f.classes.2],
                    "maps": [f.maps.0, f.maps.1],
                    "message": f.to_string(),
                })
            })
            .collect();
        return Err(CliError::Invalid {
            message: format!("Mackey axioms fail: {}", lines[0]),
            report: Some(Output {
                text,
                json: json!({"input": loaded.digest, "checks": report.checks, "failures": failures}),
            }),
        });
    }
    let pieces = split(&m)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for piece in &pieces {
        let phi = geometric_fixed_points(&m, piece.class)?;
        let _ = writeln!(
            text,
            "H{}: piece dims {:?}, dim Phi = {}, Weyl group of order {}",
            piece.class,
            piece.functor.dims(),
            phi.dim,
            phi.weyl.order()
        );
        out.push(json!({
            "class": piece.class,
            "dims": piece.functor.dims(),
            "phi_dim": phi.dim,
            "weyl_order": phi.weyl.order(),
            "weyl_action": phi.action.iter().map(matrix).collect::<Vec<_>>(),
        }));
    }
    Ok(Output {
        text,
        json: json!({"input": loaded.digest, "dims": m.dims(), "pieces": out}),
    })
}

pub fn norm_category_cmd(ws: &mut Workspace, group: &Path, transfer: &Path, dot: bool) -> Result<Output, CliError> {
    let g = ws.load_group(group)?;
    let t = ws.load_transfer(transfer)?;
    if **t.value.group() != *g.value {
        return Err(CliError::Malformed("the transfer system belongs to a different group".into()));
    }
    let cat = norm_category(&t.value)?;
    let n = cat.num_objects();
    let mut text = String::new();
    let mut homs = Vec::new();
    for s in 0..n {
        for u in 0..n {
            let maps = cat.hom(s, u);
            if !maps.is_empty() {
                let _ = writeln!(text, "G/H{s} -> G/H{u}: {} maps {:?}", maps.len(), maps);
                homs.push(json!({"source": s, "target": u, "maps": maps}));
            }
        }
    }
    let dot_text = cat.to_dot();
    let json = json!({
        "group": g.digest,
        "transfer_system": t.digest,
        "objects": (0..n).map(|c| json!({"class": c, "order": g.value.class_rep(c).order()})).collect::<Vec<_>>(),
        "homs": homs,
        "total_maps": cat.total_maps(),
        "dot": if dot { Value::String(dot_text.clone()) } else { Value::Null },
    });
    Ok(Output {
        text: if dot { dot_text } else { text },
        json,
    })
}

fn diagram_report_json(r: &DiagramReport) -> Vec<Value> {
    r.failures
        .iter()
        .map(|f| {
            json!({
                "first": [f.first.0, f.first.1, f.first.2],
                "second": [f.second.0, f.second.1, f.second.2],
                "defect": format!("{:?}", f.defect),
            })
        })
        .collect()
}

pub fn validate_diagram_cmd(ws: &mut Workspace, diagram: &Path, exec: Exec) -> Result<Output, CliError> {
    let loaded = ws.load_diagram(diagram)?;
    let report = validate_diagram_with(&loaded.value, exec);
    let failures = diagram_report_json(&report);
    let json = json!({"input": loaded.digest, "checks": report.checks, "failures": failures});
    let mut text = format!("{} checks, {} failures\n", report.checks, report.failures.len());
    for f in &report.failures {
        let _ = writeln!(
            text,
            "  {:?} at the composable pair {:?} then {:?}",
            f.defect, f.first, f.second
        );
    }
    if report.passed() {
        Ok(Output { text, json })
    } else {
        Err(CliError::Invalid {
            message: format!("{} functor-law failures", report.failures.len()),
            report: Some(Output { text, json }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hasse_of_a_chain_and_a_diamond() {
        assert_eq!(hasse_edges(&[0b0, 0b1, 0b11]), vec![(0, 1), (1, 2)]);
        assert_eq!(hasse_edges(&[0b00, 0b01, 0b10, 0b11]), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
