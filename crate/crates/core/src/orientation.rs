//! The sign `eta(e)` of an edge and combinatorial orientability.
//!
//! For a directed edge `e` the transport signs `eps_i` of the other edges
//! give `eta(e) = -prod eps_i`. Both directions of `e` give the same value.
//! The graph is orientable when `eta` multiplies to `+1` around every closed
//! edge path, which is the same as `eta(e) = tau(v) tau(w)` for some vertex
//! potential `tau: V -> ±1`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::connection::{transition, Connection};
use crate::error::{GkmError, Result};
use crate::graph::{DirectedEdge, EdgeId, GkmGraph, VertexId};

/// `eta(e)` relative to the stored lifts, checked from both directions.
pub fn eta(g: &GkmGraph, conn: &Connection, e: EdgeId) -> Result<i64> {
    let fwd = transition(g, conn, DirectedEdge::forward(e))?.eta();
    let bwd = transition(g, conn, DirectedEdge::backward(e))?.eta();
    if fwd != bwd {
        return Err(GkmError::Internal(format!(
            "eta of edge {e} differs between directions"
        )));
    }
    Ok(fwd)
}

pub fn eta_assignment(g: &GkmGraph, conn: &Connection) -> Result<Vec<i64>> {
    (0..g.edge_count()).map(|e| eta(g, conn, e)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrientationWitness {
    /// `tau[v]` with `eta(e) = tau(from) * tau(to)` on every edge.
    Potential { tau: Vec<i64> },
    /// A closed edge path along which `eta` multiplies to `-1`.
    ViolatingCycle {
        edges: Vec<DirectedEdge>,
        vertices: Vec<VertexId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientabilityVerdict {
    pub orientable: bool,
    pub eta: Vec<i64>,
    pub witness: OrientationWitness,
}

impl OrientabilityVerdict {
    /// Re-checks the witness against `eta` by direct evaluation.
    pub fn verify(&self, g: &GkmGraph) -> bool {
        match &self.witness {
            OrientationWitness::Potential { tau } => {
                self.orientable
                    && g.edges()
                        .iter()
                        .zip(&self.eta)
                        .all(|(e, &s)| s == tau[e.from] * tau[e.to])
            }
            OrientationWitness::ViolatingCycle { edges, vertices } => {
                let closed = !edges.is_empty()
                    && edges.iter().enumerate().all(|(i, &d)| {
                        g.source(d) == vertices[i]
                            && g.target(d) == vertices[(i + 1) % vertices.len()]
                    });
                let product: i64 = edges.iter().map(|d| self.eta[d.edge]).product();
                !self.orientable && closed && product == -1
            }
        }
    }
}

/// Decides orientability for a given sign assignment on edges.
pub fn orientability_from_eta(g: &GkmGraph, eta: &[i64]) -> OrientabilityVerdict {
    let n = g.vertex_count();
    let mut tau = vec![0i64; n];
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if tau[root] != 0 {
            continue;
        }
        tau[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.other_end(e, v);
                if tau[w] == 0 {
                    tau[w] = eta[e] * tau[v];
                    parent[w] = Some(e);
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let tree_edge = |e: EdgeId| {
        let edge = g.edge(e);
        parent[edge.to] == Some(e) || parent[edge.from] == Some(e)
    };
    let violation = (0..g.edge_count()).find(|&e| {
        let edge = g.edge(e);
        !tree_edge(e) && eta[e] != tau[edge.from] * tau[edge.to]
    });
    let Some(bad) = violation else {
        return OrientabilityVerdict {
            orientable: true,
            eta: eta.to_vec(),
            witness: OrientationWitness::Potential { tau },
        };
    };

    // Fundamental cycle: u up to the common ancestor, down to v, back along `bad`.
    let (u, v) = (g.edge(bad).from, g.edge(bad).to);
    let climb = |x: VertexId| g.directed_from(parent[x].expect("non-root"), x);
    let (mut a, mut b) = (u, v);
    let mut up = Vec::new();
    let mut down = Vec::new();
    while depth[a] > depth[b] {
        up.push(climb(a));
        a = g.target(climb(a));
    }
    while depth[b] > depth[a] {
        down.push(climb(b));
        b = g.target(climb(b));
    }
    while a != b {
        up.push(climb(a));
        a = g.target(climb(a));
        down.push(climb(b));
        b = g.target(climb(b));
    }
    let mut edges = up;
    edges.extend(down.into_iter().rev().map(DirectedEdge::reversed));
    edges.push(DirectedEdge::backward(bad));
    let vertices = edges.iter().map(|&d| g.source(d)).collect();
    OrientabilityVerdict {
        orientable: false,
        eta: eta.to_vec(),
        witness: OrientationWitness::ViolatingCycle { edges, vertices },
    }
}

pub fn is_orientable(g: &GkmGraph, conn: &Connection) -> Result<OrientabilityVerdict> {
    let eta = eta_assignment(g, conn)?;
    Ok(orientability_from_eta(g, &eta))
}
