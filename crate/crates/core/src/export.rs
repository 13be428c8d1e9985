//! DOT and JSON renderings of a [`FamilyNetwork`].

use std::fmt::Write;

use serde::Serialize;

use crate::netbuilder::FamilyNetwork;
use crate::rmatrix::RelationshipMatrix;

/// Version tag carried by every JSON document this crate writes.
pub const JSON_SCHEMA: u32 = 1;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with one `rank=same` subgraph per generation level, earliest
/// generation first. Conflicted edges are dashed.
pub fn to_dot(net: &FamilyNetwork, t: &RelationshipMatrix) -> String {
    let mut out = String::from("digraph family {\n");
    if !net.persons.is_empty() {
        out.push_str("  node [shape=box];\n");
    }
    for (level, members) in net.by_level() {
        let _ = writeln!(out, "  subgraph {} {{", quote(&format!("generation {level}")));
        out.push_str("    rank=same;\n");
        for p in members {
            let _ = writeln!(out, "    {};", quote(t.id(p)));
        }
        out.push_str("  }\n");
    }
    for e in &net.edges {
        let style = if e.conflicted { ", style=dashed, color=red" } else { "" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{}];",
            quote(t.id(e.from)),
            quote(t.id(e.to)),
            quote(e.code.as_str()),
            style
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct PersonJson<'a> {
    id: &'a str,
    level: i64,
}

#[derive(Serialize)]
struct EdgeJson<'a> {
    from: &'a str,
    to: &'a str,
    code: &'a str,
    glen: i64,
    conflict: bool,
}

#[derive(Serialize)]
struct NetworkJson<'a> {
    schema: u32,
    persons: Vec<PersonJson<'a>>,
    edges: Vec<EdgeJson<'a>>,
    conflicts: serde_json::Value,
}

pub fn to_json(net: &FamilyNetwork, t: &RelationshipMatrix) -> String {
    let doc = NetworkJson {
        schema: JSON_SCHEMA,
        persons: net
            .persons
            .iter()
            .map(|&p| PersonJson {
                id: t.id(p),
                level: net.level(p).expect("every person is leveled"),
            })
            .collect(),
        edges: net
            .edges
            .iter()
            .map(|e| EdgeJson {
                from: t.id(e.from),
                to: t.id(e.to),
                code: e.code.as_str(),
                glen: e.glen,
                conflict: e.conflicted,
            })
            .collect(),
        conflicts: net.conflicts.to_json(t),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("network serializes");
    s.push('\n');
    s
}
