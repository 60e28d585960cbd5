//! The JSON graph file format.
//!
//! ```json
//! {
//!   "name": "theta",
//!   "description": "free text",
//!   "vertices": ["u", "v"],
//!   "edges": [
//!     {"from": "u", "to": "v", "weight": [1, 0]},
//!     {"from": "u", "to": "v", "weight": [0, 1]},
//!     {"from": "u", "to": "v", "weight": [1, 1]}
//!   ],
//!   "connection": [
//!     {"edge": 0, "forward": {"1": 1, "2": 2}},
//!     {"edge": 1, "backward": {"0": 0, "2": 2}},
//!     {"edge": 2, "forward": {"0": 1, "1": 0}}
//!   ]
//! }
//! ```
//!
//! Edge ids are 0-based positions in `edges`. A connection entry maps edge
//! ids at the source of the chosen direction to edge ids at its target;
//! the pair fixing the edge itself may be omitted. Weights are stored in
//! canonical lift (first nonzero coordinate positive). Unknown fields are
//! collected as warnings; strict parsing turns them into errors.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::connection::Connection;
use crate::error::{GkmError, Result};
use crate::graph::{DirectedEdge, Edge, EdgeId, GkmGraph};
use crate::weight::Weight;

#[derive(Debug, Serialize, Deserialize)]
struct RawGraph {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    connection: Option<Vec<RawConnectionEntry>>,
    #[serde(flatten, skip_serializing)]
    extra: BTreeMap<String, Value>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawEdge {
    from: String,
    to: String,
    weight: [i64; 2],
    #[serde(flatten, skip_serializing)]
    extra: BTreeMap<String, Value>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawConnectionEntry {
    edge: EdgeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forward: Option<BTreeMap<String, EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    backward: Option<BTreeMap<String, EdgeId>>,
    #[serde(flatten, skip_serializing)]
    extra: BTreeMap<String, Value>,
}

/// A parsed graph file.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: GkmGraph,
    pub description: Option<String>,
    pub connection: Option<Connection>,
    /// Unknown fields, as dotted paths.
    pub warnings: Vec<String>,
}

/// Parses a graph file, canonicalizing weight lifts. Unknown fields become
/// warnings.
pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| GkmError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut warnings: Vec<String> = raw.extra.keys().cloned().collect();
    for (i, e) in raw.edges.iter().enumerate() {
        warnings.extend(e.extra.keys().map(|k| format!("edges[{i}].{k}")));
    }
    if let Some(conn) = &raw.connection {
        for (i, c) in conn.iter().enumerate() {
            warnings.extend(c.extra.keys().map(|k| format!("connection[{i}].{k}")));
        }
    }

    let index: HashMap<&str, usize> = raw
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| GkmError::UnknownVertex(name.to_string()))
    };
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (id, e) in raw.edges.iter().enumerate() {
        let weight = Weight::from(e.weight);
        if weight.is_zero() {
            return Err(GkmError::ZeroWeight(id));
        }
        edges.push(Edge {
            from: lookup(&e.from)?,
            to: lookup(&e.to)?,
            weight: weight.canonical(),
        });
    }
    let graph = GkmGraph::new(raw.name.clone(), raw.vertices.clone(), edges)?;

    let connection = match &raw.connection {
        None => None,
        Some(entries) => {
            let mut maps = Vec::new();
            for entry in entries {
                if entry.edge >= graph.edge_count() {
                    return Err(GkmError::EdgeOutOfRange(entry.edge));
                }
                if graph.edge(entry.edge).from == graph.edge(entry.edge).to {
                    return Err(GkmError::InvalidConnection(format!(
                        "edge {} is a loop",
                        entry.edge
                    )));
                }
                for (d, map) in [
                    (DirectedEdge::forward(entry.edge), &entry.forward),
                    (DirectedEdge::backward(entry.edge), &entry.backward),
                ] {
                    let Some(map) = map else { continue };
                    let pairs = map
                        .iter()
                        .map(|(k, &v)| {
                            k.parse::<EdgeId>().map(|k| (k, v)).map_err(|_| {
                                GkmError::InvalidConnection(format!("`{k}` is not an edge id"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    maps.push((d, pairs));
                }
            }
            Some(Connection::from_edge_maps(&graph, &maps)?)
        }
    };

    Ok(GraphFile {
        graph,
        description: raw.description,
        connection,
        warnings,
    })
}

/// Like [`parse_graph_file`] but unknown fields are errors.
pub fn parse_graph_file_strict(text: &str) -> Result<GraphFile> {
    let file = parse_graph_file(text)?;
    match file.warnings.first() {
        Some(w) => Err(GkmError::UnknownField(w.clone())),
        None => Ok(file),
    }
}

pub fn parse_graph(text: &str) -> Result<GkmGraph> {
    parse_graph_file(text).map(|f| f.graph)
}

/// Serializes a graph (and optionally a connection) in the file format.
/// Weights are written as stored.
pub fn serialize_graph(g: &GkmGraph, connection: Option<&Connection>) -> String {
    let raw = RawGraph {
        name: g.name().map(str::to_string),
        description: None,
        vertices: g.vertex_names().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| RawEdge {
                from: g.vertex_name(e.from).to_string(),
                to: g.vertex_name(e.to).to_string(),
                weight: e.weight.into(),
                extra: BTreeMap::new(),
            })
            .collect(),
        connection: connection.map(|c| {
            (0..g.edge_count())
                .map(|e| RawConnectionEntry {
                    edge: e,
                    forward: Some(
                        c.edge_map(g, DirectedEdge::forward(e))
                            .into_iter()
                            .filter(|&(f, _)| f != e)
                            .map(|(f, f2)| (f.to_string(), f2))
                            .collect(),
                    ),
                    backward: None,
                    extra: BTreeMap::new(),
                })
                .collect()
        }),
        extra: BTreeMap::new(),
    };
    serde_json::to_string_pretty(&raw).expect("graph serializes")
}
