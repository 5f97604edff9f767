//! JSON and DOT encodings of dual graphs.
//!
//! JSON: `{"edges":[[a,b],...],"vertices":[{"boundary":bool,"name":str,"weight":int},...]}`
//! with vertices and edges in sorted order, so serializing a parsed document
//! reproduces it byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::DualGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub boundary: bool,
    pub name: String,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub edges: Vec<[String; 2]>,
    pub vertices: Vec<VertexJson>,
}

impl From<&DualGraph> for GraphJson {
    fn from(g: &DualGraph) -> Self {
        GraphJson {
            edges: g.edges().map(|(a, b)| [a.to_owned(), b.to_owned()]).collect(),
            vertices: g
                .curves()
                .map(|(n, c)| VertexJson {
                    boundary: c.boundary,
                    name: n.to_owned(),
                    weight: c.weight,
                })
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for DualGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let mut g = DualGraph::new();
        for v in j.vertices {
            g.add_curve(v.name, v.weight, v.boundary)?;
        }
        for [a, b] in &j.edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }
}

pub fn to_json(g: &DualGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph serializes")
}

pub fn from_json(s: &str) -> Result<DualGraph> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
    DualGraph::try_from(j)
}

pub(crate) fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering with vertex labels `name (weight)`, vertices and edges sorted.
/// Boundary curves are drawn with a double outline.
pub fn to_dot(g: &DualGraph, graph_name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", dot_id(graph_name)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (n, c) in g.curves() {
        let extra = if c.boundary { ", peripheries=2" } else { "" };
        writeln!(
            out,
            "  {} [label={}{extra}];",
            dot_id(n),
            dot_id(&format!("{n} ({})", c.weight))
        )
        .unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  {} -- {};", dot_id(a), dot_id(b)).unwrap();
    }
    out.push_str("}\n");
    out
}
