//! Crystal-graph documents: DOT, JSON and TikZ. Output is deterministic;
//! nodes come lexicographically descending and edges in graph order.

use std::fmt::Write;
use std::str::FromStr;

use qweyl_core::crystal::node_label;
use qweyl_core::{CrystalEdge, CrystalGraph, DiagramSpec, ExponentVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("unknown format `{0}`; expected dot, json or tikz")]
    UnknownFormat(String),
    #[error("malformed graph document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed graph document: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Tikz,
}

impl FromStr for Format {
    type Err = ExportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "tikz" => Ok(Format::Tikz),
            _ => Err(ExportError::UnknownFormat(s.into())),
        }
    }
}

const DOT_COLORS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "cyan4", "magenta"];
const TIKZ_COLORS: [&str; 8] = ["red", "blue", "green!60!black", "orange", "violet", "brown", "teal", "magenta"];

fn color(palette: &[&'static str], i: usize) -> &'static str {
    palette[i % palette.len()]
}

pub fn render(graph: &CrystalGraph, format: Format) -> String {
    match format {
        Format::Dot => to_dot(graph),
        Format::Json => to_json(graph),
        Format::Tikz => to_tikz(graph),
    }
}

pub fn to_dot(graph: &CrystalGraph) -> String {
    let mut out = String::from("digraph crystal {\n");
    for a in &graph.nodes {
        let _ = writeln!(out, "  \"{}\";", node_label(a));
    }
    for e in &graph.edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [color={}, label=\"f~{}\"];",
            node_label(&e.from),
            node_label(&e.to),
            color(&DOT_COLORS, e.color),
            e.color
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    i: usize,
    from: Vec<u32>,
    to: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    diagram: String,
    s: u32,
    nodes: Vec<Vec<u32>>,
    edges: Vec<JsonEdge>,
}

pub fn to_json(graph: &CrystalGraph) -> String {
    let doc = JsonGraph {
        diagram: graph.diagram.to_string(),
        s: graph.s,
        nodes: graph.nodes.iter().map(|a| a.entries().to_vec()).collect(),
        edges: graph
            .edges
            .iter()
            .map(|e| JsonEdge { i: e.color, from: e.from.entries().to_vec(), to: e.to.entries().to_vec() })
            .collect(),
    };
    let mut out = serde_json::to_string(&doc).expect("graph documents serialize");
    out.push('\n');
    out
}

/// Reads back a document written by [`to_json`].
pub fn from_json(text: &str) -> Result<CrystalGraph, ExportError> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let diagram = DiagramSpec::from_str(&doc.diagram).map_err(|e| ExportError::Invalid(e.to_string()))?;
    let len = diagram.nvars();
    let vector = |v: Vec<u32>| {
        if v.len() == len {
            Ok(ExponentVector::new(v))
        } else {
            Err(ExportError::Invalid(format!("vector of length {} in a graph over {len} variables", v.len())))
        }
    };
    let nodes = doc.nodes.into_iter().map(vector).collect::<Result<Vec<_>, _>>()?;
    let edges = doc
        .edges
        .into_iter()
        .map(|e| Ok(CrystalEdge { from: vector(e.from)?, color: e.i, to: vector(e.to)? }))
        .collect::<Result<Vec<_>, ExportError>>()?;
    Ok(CrystalGraph::new(diagram, doc.s, nodes, edges))
}

/// Height `Σ (r+1-j) a_j` and offset `Σ_{0<j<r+1} a_j`, which places the
/// highest weight at the top and each `f̃`-edge one row down.
fn position(a: &ExponentVector) -> (u64, u64) {
    let n = a.len();
    let y = a.entries().iter().enumerate().map(|(j, &e)| (n - 1 - j) as u64 * u64::from(e)).sum();
    let x = a.entries().iter().take(n.saturating_sub(1)).skip(1).map(|&e| u64::from(e)).sum();
    (x, y)
}

pub fn to_tikz(graph: &CrystalGraph) -> String {
    let mut out = String::from("\\begin{tikzpicture}[xscale=1.5,yscale=1.35]\n");
    let name = |a: &ExponentVector| graph.nodes.iter().position(|b| b == a).map(|k| format!("n{k}"));
    for (k, a) in graph.nodes.iter().enumerate() {
        let (x, y) = position(a);
        let _ = writeln!(out, "  \\node at ({x},{y}) (n{k}) {{$({})$}};", node_label(a));
    }
    for e in &graph.edges {
        if let (Some(from), Some(to)) = (name(&e.from), name(&e.to)) {
            let _ = writeln!(out, "  \\draw[thick,->,{}] ({from}) -- ({to});", color(&TIKZ_COLORS, e.color));
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
