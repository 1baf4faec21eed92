//! Reading and writing graph systems.
//!
//! Two JSON documents are accepted:
//!
//! * edge lists: `{"n": 3, "graphs": [[[0,1]], [[1,2]], [[0,2]]]}`
//! * colex hex: `{"n": 3, "hex": ["03", "04", "00"]}`
//!
//! In the hex form each graph is its `C(n,2)` colex edge bits packed
//! little-endian into bytes, so `(0,1)` is bit 0, `(0,2)` bit 1, `(1,2)` bit 2.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, ParseError};
use crate::graph::{Graph, MAX_VERTICES};
use crate::rainbow::GraphSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SystemFormat {
    /// Whichever of the two documents is present.
    #[default]
    Auto,
    Json,
    Hex,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n: usize,
    #[serde(default)]
    graphs: Option<Vec<Vec<[usize; 2]>>>,
    #[serde(default)]
    hex: Option<Vec<String>>,
}

#[derive(Serialize)]
struct HexDoc {
    n: usize,
    hex: Vec<String>,
}

/// Parses and validates a system. Duplicate edges, loops and labels `>= n`
/// are rejected.
pub fn parse_system(text: &str, format: SystemFormat) -> Result<GraphSystem, ParseError> {
    let raw: RawSystem = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.n > MAX_VERTICES {
        return Err(ParseError::Graph {
            graph: 0,
            source: GraphError::TooManyVertices(raw.n),
        });
    }
    let graphs = match (raw.graphs, raw.hex, format) {
        (Some(_), Some(_), _) => {
            return Err(ParseError::Syntax {
                line: 1,
                column: 1,
                message: "both \"graphs\" and \"hex\" present".into(),
            })
        }
        (None, None, _) => {
            return Err(ParseError::Syntax {
                line: 1,
                column: 1,
                message: "missing \"graphs\" or \"hex\"".into(),
            })
        }
        (Some(_), None, SystemFormat::Hex) => {
            return Err(ParseError::WrongFormat { expected: "hex" })
        }
        (None, Some(_), SystemFormat::Json) => {
            return Err(ParseError::WrongFormat { expected: "json" })
        }
        (Some(lists), None, _) => lists
            .iter()
            .enumerate()
            .map(|(i, edges)| {
                edge_list_graph(raw.n, edges)
                    .map_err(|source| ParseError::Graph { graph: i, source })
            })
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(codes), _) => codes
            .iter()
            .enumerate()
            .map(|(i, code)| {
                Graph::from_hex(raw.n, code)
                    .map_err(|source| ParseError::Graph { graph: i, source })
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(GraphSystem::new(graphs)?)
}

pub fn read_system<R: Read>(
    mut source: R,
    format: SystemFormat,
) -> Result<GraphSystem, ParseError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    parse_system(&text, format)
}

fn edge_list_graph(n: usize, edges: &[[usize; 2]]) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for &[a, b] in edges {
        let e = crate::graph::Edge::new(a, b)?;
        if e.v() >= n {
            return Err(GraphError::VertexOutOfRange { vertex: e.v(), n });
        }
        if g.contains(e) {
            return Err(GraphError::DuplicateEdge(e.u(), e.v()));
        }
        g.insert(e);
    }
    Ok(g)
}

/// The edge-list document, edges sorted colex.
pub fn emit_json(s: &GraphSystem) -> String {
    serde_json::to_string(s).expect("system serializes")
}

/// The compact hex document.
pub fn emit_hex(s: &GraphSystem) -> String {
    let doc = HexDoc {
        n: s.order(),
        hex: s.graphs().iter().map(Graph::to_hex).collect(),
    };
    serde_json::to_string(&doc).expect("system serializes")
}

pub fn emit(s: &GraphSystem, format: SystemFormat) -> String {
    match format {
        SystemFormat::Hex => emit_hex(s),
        SystemFormat::Json | SystemFormat::Auto => emit_json(s),
    }
}
