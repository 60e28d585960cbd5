use serde::{Deserialize, Serialize};

use crate::error::{GkmError, Result};
use crate::weight::Weight;

pub type VertexId = usize;
/// Position of the edge in input order.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: Weight,
}

/// An edge together with a direction; `forward` runs from the stored
/// `from` endpoint to the stored `to` endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub edge: EdgeId,
    pub forward: bool,
}

impl DirectedEdge {
    pub fn forward(edge: EdgeId) -> Self {
        DirectedEdge { edge, forward: true }
    }

    pub fn backward(edge: EdgeId) -> Self {
        DirectedEdge {
            edge,
            forward: false,
        }
    }

    pub fn reversed(self) -> Self {
        DirectedEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// An edge-labelled multigraph with labels in `Z^2`.
///
/// Construction only checks references and nonzero weights; the GKM axioms
/// are checked by [`crate::validate::validate`] so that violations can be
/// reported rather than refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmGraph {
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

impl GkmGraph {
    pub fn new(name: Option<String>, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(GkmError::DuplicateVertex(v.clone()));
            }
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (id, e) in edges.iter().enumerate() {
            for end in [e.from, e.to] {
                if end >= vertices.len() {
                    return Err(GkmError::UnknownVertex(format!("#{end}")));
                }
            }
            if e.weight.is_zero() {
                return Err(GkmError::ZeroWeight(id));
            }
            incidence[e.from].push(id);
            if e.to != e.from {
                incidence[e.to].push(id);
            }
        }
        Ok(GkmGraph {
            name,
            vertices,
            edges,
            incidence,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, e: EdgeId) -> Weight {
        self.edges[e].weight
    }

    /// Edges at `v` in input order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Position of `e` in the incidence order at `v`.
    pub fn incidence_position(&self, v: VertexId, e: EdgeId) -> Option<usize> {
        self.incidence[v].iter().position(|&f| f == e)
    }

    /// The common valence, if every vertex has the same number of edges.
    pub fn valence(&self) -> Option<usize> {
        let first = self.incidence.first()?.len();
        self.incidence
            .iter()
            .all(|inc| inc.len() == first)
            .then_some(first)
    }

    pub fn source(&self, d: DirectedEdge) -> VertexId {
        let e = &self.edges[d.edge];
        if d.forward {
            e.from
        } else {
            e.to
        }
    }

    pub fn target(&self, d: DirectedEdge) -> VertexId {
        self.source(d.reversed())
    }

    /// `e` directed away from its endpoint `v`.
    pub fn directed_from(&self, e: EdgeId, v: VertexId) -> DirectedEdge {
        DirectedEdge {
            edge: e,
            forward: self.edges[e].from == v,
        }
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let edge = &self.edges[e];
        if edge.from == v {
            edge.to
        } else {
            edge.from
        }
    }

    pub fn weights_at(&self, v: VertexId) -> Vec<Weight> {
        self.incidence[v].iter().map(|&e| self.edges[e].weight).collect()
    }

    /// Same graph with the lift of edge `e` negated.
    pub fn with_negated_weight(&self, e: EdgeId) -> GkmGraph {
        let mut g = self.clone();
        g.edges[e].weight = g.edges[e].weight.negated();
        g
    }

    /// Same graph with every weight replaced by its canonical lift.
    pub fn canonicalized(&self) -> GkmGraph {
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            e.weight = e.weight.canonical();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph() -> GkmGraph {
        GkmGraph::new(
            None,
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Edge { from: 0, to: 1, weight: Weight::new(1, 0) },
                Edge { from: 2, to: 1, weight: Weight::new(0, 1) },
            ],
        )
        .unwrap()
    }

    #[test]
    fn incidence_follows_input_order() {
        let g = path_graph();
        assert_eq!(g.incident(1), &[0, 1]);
        assert_eq!(g.incidence_position(1, 1), Some(1));
        assert_eq!(g.valence(), None);
    }

    #[test]
    fn directed_edges() {
        let g = path_graph();
        let d = g.directed_from(1, 1);
        assert!(!d.forward);
        assert_eq!(g.source(d), 1);
        assert_eq!(g.target(d), 2);
        assert_eq!(d.reversed().reversed(), d);
    }

    #[test]
    fn rejects_zero_weight_and_duplicates() {
        let zero = GkmGraph::new(
            None,
            vec!["a".into(), "b".into()],
            vec![Edge { from: 0, to: 1, weight: Weight::new(0, 0) }],
        );
        assert_eq!(zero.unwrap_err(), GkmError::ZeroWeight(0));
        let dup = GkmGraph::new(None, vec!["a".into(), "a".into()], vec![]);
        assert!(matches!(dup, Err(GkmError::DuplicateVertex(_))));
    }
}
