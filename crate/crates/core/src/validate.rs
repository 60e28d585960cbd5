//! Axiom-level checks on a labelled graph.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, GkmGraph, VertexId};
use crate::linalg::integer;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Finding {
    /// Vertex degrees differ; `degrees[v]` is the degree of vertex `v`.
    Valence { degrees: Vec<usize> },
    Loop { edge: EdgeId, vertex: VertexId },
    DependenceAtVertex { vertex: VertexId, edges: [EdgeId; 2] },
    Disconnected { components: usize, unreachable: Vec<VertexId> },
    /// The weights at `vertex` span a proper sublattice of `Z^2`;
    /// `divisors` are its elementary divisors.
    Ineffective { vertex: VertexId, divisors: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub valence: Option<usize>,
    pub failures: Vec<Finding>,
}

/// Elementary divisors of the `2 x n` matrix of weights at `v`.
pub fn elementary_divisors_at(g: &GkmGraph, v: VertexId) -> Vec<i64> {
    let w = g.weights_at(v);
    let rows = vec![
        w.iter().map(|x| BigInt::from(x.a)).collect::<Vec<_>>(),
        w.iter().map(|x| BigInt::from(x.b)).collect::<Vec<_>>(),
    ];
    let smith = integer::smith(rows, w.len());
    let mut divisors: Vec<i64> = smith
        .diagonal
        .iter()
        .map(|d| i64::try_from(d).unwrap_or(i64::MAX))
        .collect();
    divisors.resize(2, 0);
    divisors
}

/// Whether the weights at `v` generate all of `Z^2`.
pub fn is_effective_at(g: &GkmGraph, v: VertexId) -> bool {
    elementary_divisors_at(g, v).iter().all(|d| BigInt::from(*d).is_one())
}

fn components(g: &GkmGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.other_end(e, v);
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn validate(g: &GkmGraph) -> ValidationReport {
    let mut failures = Vec::new();
    let valence = g.valence();
    if valence.is_none() && g.vertex_count() > 0 {
        failures.push(Finding::Valence {
            degrees: (0..g.vertex_count()).map(|v| g.incident(v).len()).collect(),
        });
    }
    for (id, e) in g.edges().iter().enumerate() {
        if e.from == e.to {
            failures.push(Finding::Loop {
                edge: id,
                vertex: e.from,
            });
        }
    }
    let comp = components(g);
    let count = comp.iter().max().map_or(0, |m| m + 1);
    if count > 1 {
        failures.push(Finding::Disconnected {
            components: count,
            unreachable: (0..g.vertex_count()).filter(|&v| comp[v] != 0).collect(),
        });
    }
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                if !g.weight(inc[i]).is_independent_of(g.weight(inc[j])) {
                    failures.push(Finding::DependenceAtVertex {
                        vertex: v,
                        edges: [inc[i], inc[j]],
                    });
                }
            }
        }
        if !is_effective_at(g, v) {
            failures.push(Finding::Ineffective {
                vertex: v,
                divisors: elementary_divisors_at(g, v),
            });
        }
    }
    ValidationReport {
        ok: failures.is_empty(),
        valence,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyPair {
    pub vertex: VertexId,
    pub edges: [EdgeId; 2],
    pub det: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyReport {
    pub ok: bool,
    pub imprimitive_edges: Vec<EdgeId>,
    pub failing_pairs: Vec<IsotropyPair>,
}

impl IsotropyReport {
    /// Distinct `|det|` values among failing pairs, ascending.
    pub fn failing_determinants(&self) -> Vec<i64> {
        let mut dets: Vec<i64> = self.failing_pairs.iter().map(|p| p.det.abs()).collect();
        dets.sort_unstable();
        dets.dedup();
        dets
    }
}

/// Every weight primitive and every pair of adjacent weights a `Z`-basis.
pub fn connected_isotropy_check(g: &GkmGraph) -> IsotropyReport {
    let imprimitive_edges: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| !g.weight(e).is_primitive())
        .collect();
    let mut failing_pairs = Vec::new();
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                let det = g.weight(inc[i]).det(g.weight(inc[j]));
                if det.abs() != 1 {
                    failing_pairs.push(IsotropyPair {
                        vertex: v,
                        edges: [inc[i], inc[j]],
                        det,
                    });
                }
            }
        }
    }
    IsotropyReport {
        ok: imprimitive_edges.is_empty() && failing_pairs.is_empty(),
        imprimitive_edges,
        failing_pairs,
    }
}
