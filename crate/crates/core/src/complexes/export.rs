//! JSON and DOT renderings of explored complexes.

use std::fmt::Write;

use super::graph::{ComplexGraph, GraphDocument, Payload};
use crate::error::Result;

/// Pretty JSON with a trailing newline. Reading it back and writing again
/// gives the same bytes.
pub fn to_json(g: &ComplexGraph) -> String {
    let mut s = serde_json::to_string_pretty(&g.to_document()).expect("graph documents serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<ComplexGraph> {
    let doc: GraphDocument = serde_json::from_str(text)?;
    ComplexGraph::from_document(&doc)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering; vertices and edges in key order.
pub fn to_dot(g: &ComplexGraph) -> String {
    let mut s = String::new();
    let b = &g.budget;
    writeln!(s, "graph {} {{", quote(&format!("{} L({},{})", g.kind, b.p, b.q))).unwrap();
    writeln!(s, "  label={};", quote(&b.to_string())).unwrap();
    for v in g.vertices() {
        let shape = match v.payload {
            Payload::Disk(_) => "ellipse",
            Payload::DualPair { .. } => "box",
        };
        writeln!(s, "  {} [shape={}];", quote(&v.key), shape).unwrap();
    }
    for (&(a, c), info) in g.edges() {
        let mut attrs = Vec::new();
        if let Some(cl) = info.clause {
            attrs.push(format!("clause={}", quote(serde_json::to_value(cl).unwrap().as_str().unwrap_or_default())));
        }
        if !info.witnesses.is_empty() {
            attrs.push(format!("label={}", quote(&info.witnesses.join(","))));
        }
        let tail = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
        writeln!(s, "  {} -- {}{};", quote(&g.vertex(a).key), quote(&g.vertex(c).key), tail).unwrap();
    }
    for t in g.two_simplices() {
        let keys: Vec<&str> = t.iter().map(|&i| g.vertex(i).key.as_str()).collect();
        writeln!(s, "  // 2-simplex {}", keys.join(" ")).unwrap();
    }
    s.push_str("}\n");
    s
}
