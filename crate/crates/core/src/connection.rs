//! Compatible connections, their transition data, and connection paths.
//!
//! A connection assigns to every directed edge `e: v -> w` a bijection
//! `E_v -> E_w` fixing `e`, with the reversed edge carrying the inverse
//! bijection. It is compatible with the labels when every transported label
//! satisfies `alpha(nabla_e f) = eps * alpha(f) + k * alpha(e)` with
//! `eps = ±1` and `k` an integer.
//!
//! All permutations and matrices are relative to the incidence order at each
//! vertex, which is the input order of the edges.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{GkmError, Result};
use crate::graph::{DirectedEdge, EdgeId, GkmGraph, VertexId};
use crate::linalg::small::{self, IntMatrix};
use crate::weight::Weight;

/// The pair `(eps, k)` with `image = eps * f + k * along`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportCoefficients {
    pub sign: i64,
    pub shift: i64,
}

/// Solves `image = eps * f + k * along` by Cramer's rule and keeps the
/// solution only if `eps = ±1` and `k` is an integer.
pub fn solve_transport(along: Weight, f: Weight, image: Weight) -> Option<TransportCoefficients> {
    let denom = f.det(along);
    if denom == 0 {
        return None;
    }
    let eps_num = image.det(along);
    let k_num = f.det(image);
    if eps_num % denom != 0 || k_num % denom != 0 {
        return None;
    }
    let sign = eps_num / denom;
    (sign == 1 || sign == -1).then_some(TransportCoefficients {
        sign,
        shift: k_num / denom,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Connection {
    /// `forward[e][i]` is the image, along `e` from its stored `from` vertex,
    /// of the `i`-th edge at `from`.
    forward: Vec<Vec<EdgeId>>,
}

impl Connection {
    /// Image of `f` (an edge at the source of `d`) under the bijection of `d`.
    pub fn transport(&self, g: &GkmGraph, d: DirectedEdge, f: EdgeId) -> EdgeId {
        let e = g.edge(d.edge);
        if d.forward {
            let i = g.incidence_position(e.from, f).expect("edge not at source");
            self.forward[d.edge][i]
        } else {
            let i = self.forward[d.edge]
                .iter()
                .position(|&x| x == f)
                .expect("edge not at source");
            g.incident(e.from)[i]
        }
    }

    /// The bijection of `d` as `(edge at source, image at target)` pairs, in
    /// source incidence order.
    pub fn edge_map(&self, g: &GkmGraph, d: DirectedEdge) -> Vec<(EdgeId, EdgeId)> {
        g.incident(g.source(d))
            .iter()
            .map(|&f| (f, self.transport(g, d, f)))
            .collect()
    }

    /// Builds a connection from explicit bijections, one per edge, given for
    /// either direction. Pairs fixing the edge itself may be omitted. The
    /// result is checked against the axioms and label compatibility.
    pub fn from_edge_maps(
        g: &GkmGraph,
        maps: &[(DirectedEdge, Vec<(EdgeId, EdgeId)>)],
    ) -> Result<Connection> {
        let mut forward: Vec<Option<Vec<EdgeId>>> = vec![None; g.edge_count()];
        for (d, pairs) in maps {
            if d.edge >= g.edge_count() {
                return Err(GkmError::EdgeOutOfRange(d.edge));
            }
            let src = g.source(*d);
            let dst = g.target(*d);
            let mut image: Vec<Option<EdgeId>> = vec![None; g.incident(src).len()];
            let fixed = g.incidence_position(src, d.edge).expect("edge at its source");
            image[fixed] = Some(d.edge);
            for &(f, f2) in pairs {
                let i = g.incidence_position(src, f).ok_or_else(|| {
                    GkmError::InvalidConnection(format!(
                        "edge {f} is not incident to the source of edge {}",
                        d.edge
                    ))
                })?;
                if g.incidence_position(dst, f2).is_none() {
                    return Err(GkmError::InvalidConnection(format!(
                        "edge {f2} is not incident to the target of edge {}",
                        d.edge
                    )));
                }
                if image[i].is_some_and(|x| x != f2) {
                    return Err(GkmError::InvalidConnection(format!(
                        "edge {f} mapped twice along edge {}",
                        d.edge
                    )));
                }
                image[i] = Some(f2);
            }
            let image: Vec<EdgeId> = image
                .into_iter()
                .collect::<Option<_>>()
                .ok_or_else(|| {
                    GkmError::InvalidConnection(format!("incomplete map along edge {}", d.edge))
                })?;
            if image.iter().collect::<BTreeSet<_>>().len() != image.len() {
                return Err(GkmError::InvalidConnection(format!(
                    "map along edge {} is not a bijection",
                    d.edge
                )));
            }
            // Store in the forward direction.
            let stored = if d.forward {
                image
            } else {
                let from = g.edge(d.edge).from;
                g.incident(from)
                    .iter()
                    .map(|&f| {
                        let j = image.iter().position(|&x| x == f).expect("bijection");
                        g.incident(src)[j]
                    })
                    .collect()
            };
            if forward[d.edge].as_ref().is_some_and(|prev| *prev != stored) {
                return Err(GkmError::InvalidConnection(format!(
                    "the two directions of edge {} are not inverse",
                    d.edge
                )));
            }
            forward[d.edge] = Some(stored);
        }
        let forward = forward
            .into_iter()
            .enumerate()
            .map(|(e, m)| {
                m.ok_or_else(|| GkmError::InvalidConnection(format!("no map for edge {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let conn = Connection { forward };
        conn.check_compatible(g)?;
        Ok(conn)
    }

    /// Checks the fixed-edge axiom and label compatibility on every edge.
    pub fn check_compatible(&self, g: &GkmGraph) -> Result<()> {
        for e in 0..g.edge_count() {
            let d = DirectedEdge::forward(e);
            for (f, f2) in self.edge_map(g, d) {
                if f == e {
                    if f2 != e {
                        return Err(GkmError::InvalidConnection(format!(
                            "edge {e} is not fixed by its own transport"
                        )));
                    }
                    continue;
                }
                if solve_transport(g.weight(e), g.weight(f), g.weight(f2)).is_none() {
                    return Err(GkmError::InvalidConnection(format!(
                        "transport of edge {f} to edge {f2} along edge {e} violates label compatibility"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All compatible connections, organized as a product of per-edge choices.
#[derive(Debug, Clone)]
pub struct ConnectionSpace {
    choices: Vec<Vec<Vec<EdgeId>>>,
}

impl ConnectionSpace {
    pub fn new(g: &GkmGraph) -> Self {
        let choices = (0..g.edge_count())
            .map(|e| compatible_forward_maps(g, e))
            .collect();
        ConnectionSpace { choices }
    }

    /// Number of compatible bijections for each edge.
    pub fn choices_per_edge(&self) -> Vec<usize> {
        self.choices.iter().map(Vec::len).collect()
    }

    /// Number of compatible connections, saturating at `u128::MAX`.
    pub fn len(&self) -> u128 {
        self.choices
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub fn is_empty(&self) -> bool {
        self.choices.iter().any(Vec::is_empty)
    }

    /// The connection at `index` in the order of [`Self::iter`]: edge 0 is
    /// the most significant digit.
    pub fn get(&self, index: u128) -> Option<Connection> {
        if index >= self.len() || self.is_empty() {
            return None;
        }
        let mut rest = index;
        let mut forward = vec![Vec::new(); self.choices.len()];
        for (e, c) in self.choices.iter().enumerate().rev() {
            let n = c.len() as u128;
            forward[e] = c[(rest % n) as usize].clone();
            rest /= n;
        }
        Some(Connection { forward })
    }

    pub fn iter(&self) -> impl Iterator<Item = Connection> + '_ {
        self.choices
            .iter()
            .map(|c| c.iter())
            .multi_cartesian_product()
            .map(|maps| Connection {
                forward: maps.into_iter().cloned().collect(),
            })
            .chain(
                // multi_cartesian_product of zero factors yields nothing;
                // the edgeless graph still has the empty connection.
                self.choices
                    .is_empty()
                    .then(|| Connection { forward: vec![] }),
            )
    }

    /// Position of `conn` in the enumeration order.
    pub fn index_of(&self, conn: &Connection) -> Option<u128> {
        let mut index = 0u128;
        for (c, m) in self.choices.iter().zip(&conn.forward) {
            let pos = c.iter().position(|x| x == m)? as u128;
            index = index * c.len() as u128 + pos;
        }
        Some(index)
    }
}

fn compatible_forward_maps(g: &GkmGraph, e: EdgeId) -> Vec<Vec<EdgeId>> {
    let edge = g.edge(e);
    let at_from = g.incident(edge.from);
    let at_to: Vec<EdgeId> = g.incident(edge.to).iter().copied().filter(|&f| f != e).collect();
    let others: Vec<usize> = (0..at_from.len()).filter(|&i| at_from[i] != e).collect();
    if others.len() != at_to.len() {
        return Vec::new();
    }
    let along = edge.weight;
    at_to
        .iter()
        .copied()
        .permutations(at_to.len())
        .filter(|perm| {
            others
                .iter()
                .zip(perm)
                .all(|(&i, &f2)| solve_transport(along, g.weight(at_from[i]), g.weight(f2)).is_some())
        })
        .map(|perm| {
            let mut image = vec![e; at_from.len()];
            for (&i, &f2) in others.iter().zip(&perm) {
                image[i] = f2;
            }
            image
        })
        .collect()
}

/// Every compatible connection. Empty exactly when the labelled graph admits
/// none.
pub fn enumerate_connections(g: &GkmGraph) -> Vec<Connection> {
    ConnectionSpace::new(g).iter().collect()
}

/// Bookkeeping for transport along one directed edge `v -> w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionData {
    pub edge: DirectedEdge,
    pub source: VertexId,
    pub target: VertexId,
    /// `permutation[i] = j` when the `i`-th edge at the source is carried to
    /// the `j`-th edge at the target.
    pub permutation: Vec<usize>,
    /// Position of the edge itself in the source incidence order.
    pub fixed_position: usize,
    /// Per source position `i`: `(eps_i, k_i)`; `(1, 0)` for the edge itself.
    pub coefficients: Vec<TransportCoefficients>,
    /// The matrix in `GL(n, Z)` carrying the weight column at the source to
    /// the weight column at the target.
    pub matrix: IntMatrix,
}

impl TransitionData {
    pub fn permutation_sign(&self) -> i64 {
        small::permutation_sign(&self.permutation)
    }

    pub fn determinant(&self) -> i64 {
        small::det(&self.matrix)
    }

    /// `-prod eps_i` over the transported edges other than the edge itself.
    pub fn eta(&self) -> i64 {
        let m = self.fixed_position;
        -self
            .coefficients
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != m)
            .map(|(_, c)| c.sign)
            .product::<i64>()
    }
}

/// Transition data of `conn` along `d`.
pub fn transition(g: &GkmGraph, conn: &Connection, d: DirectedEdge) -> Result<TransitionData> {
    let source = g.source(d);
    let target = g.target(d);
    let at_source = g.incident(source);
    let n = at_source.len();
    let along = g.weight(d.edge);
    let m = g
        .incidence_position(source, d.edge)
        .ok_or_else(|| GkmError::Internal("edge missing from its own endpoint".into()))?;
    let mut permutation = Vec::with_capacity(n);
    let mut coefficients = Vec::with_capacity(n);
    for (i, &f) in at_source.iter().enumerate() {
        let image = conn.transport(g, d, f);
        let j = g
            .incidence_position(target, image)
            .ok_or_else(|| GkmError::Internal(format!("image of edge {f} not at target")))?;
        permutation.push(j);
        if i == m {
            coefficients.push(TransportCoefficients { sign: 1, shift: 0 });
            continue;
        }
        let c = solve_transport(along, g.weight(f), g.weight(image)).ok_or_else(|| {
            GkmError::Internal(format!(
                "connection incompatible along edge {} at edge {f}",
                d.edge
            ))
        })?;
        coefficients.push(c);
    }
    let mut matrix = vec![vec![0i64; n]; n];
    for j in 0..n {
        matrix[permutation[j]][j] = coefficients[j].sign;
    }
    for i in 0..n {
        if i != permutation[m] {
            let j = permutation.iter().position(|&p| p == i).expect("permutation");
            matrix[i][m] = coefficients[j].shift;
        }
    }
    Ok(TransitionData {
        edge: d,
        source,
        target,
        permutation,
        fixed_position: m,
        coefficients,
        matrix,
    })
}

/// A closed edge path generated by `e_{i+1} = nabla_{e_i}(e_{i-1})`,
/// stored in canonical form: the least rotation over both orientations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConnectionPath {
    pub edges: Vec<DirectedEdge>,
}

impl ConnectionPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The source vertex of each step.
    pub fn vertices(&self, g: &GkmGraph) -> Vec<VertexId> {
        self.edges.iter().map(|&d| g.source(d)).collect()
    }

    pub fn reversed(&self) -> ConnectionPath {
        ConnectionPath {
            edges: self.edges.iter().rev().map(|d| d.reversed()).collect(),
        }
    }

    /// Canonical representative of the cyclic word up to rotation and
    /// reversal.
    pub fn canonical(edges: &[DirectedEdge]) -> ConnectionPath {
        let rev: Vec<DirectedEdge> = edges.iter().rev().map(|d| d.reversed()).collect();
        let n = edges.len();
        let best = [edges, rev.as_slice()]
            .into_iter()
            .flat_map(|word| {
                (0..n).map(move |r| word[r..].iter().chain(&word[..r]).copied().collect::<Vec<_>>())
            })
            .min()
            .unwrap_or_default();
        ConnectionPath { edges: best }
    }
}

/// Traces the path starting with `d` whose previous edge was `pred`.
fn trace_path(
    g: &GkmGraph,
    conn: &Connection,
    d: DirectedEdge,
    pred: EdgeId,
    visited: &mut HashSet<(DirectedEdge, EdgeId)>,
) -> Vec<DirectedEdge> {
    let start = (d, pred);
    let mut state = start;
    let mut word = Vec::new();
    loop {
        visited.insert(state);
        let (cur, prev) = state;
        word.push(cur);
        let next_edge = conn.transport(g, cur, prev);
        let next = g.directed_from(next_edge, g.target(cur));
        state = (next, cur.edge);
        if state == start {
            return word;
        }
    }
}

/// All connection paths, deduplicated up to starting point and orientation,
/// in canonical order.
pub fn connection_paths(g: &GkmGraph, conn: &Connection) -> Vec<ConnectionPath> {
    let mut visited = HashSet::new();
    let mut paths = BTreeSet::new();
    for e in 0..g.edge_count() {
        for d in [DirectedEdge::forward(e), DirectedEdge::backward(e)] {
            for &pred in g.incident(g.source(d)) {
                if pred == e || visited.contains(&(d, pred)) {
                    continue;
                }
                let word = trace_path(g, conn, d, pred, &mut visited);
                paths.insert(ConnectionPath::canonical(&word));
            }
        }
    }
    paths.into_iter().collect()
}

/// Ordered product of the transition matrices around `path`, an
/// endomorphism of `Z^n` in the edge order of the path's first vertex.
pub fn loop_holonomy(g: &GkmGraph, conn: &Connection, path: &ConnectionPath) -> Result<IntMatrix> {
    let n = path
        .edges
        .first()
        .map_or(0, |&d| g.incident(g.source(d)).len());
    let mut acc = small::identity(n);
    for &d in &path.edges {
        let t = transition(g, conn, d)?;
        acc = small::mul(&t.matrix, &acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn theta(labels: [Weight; 3]) -> GkmGraph {
        GkmGraph::new(
            None,
            vec!["u".into(), "v".into()],
            labels
                .iter()
                .map(|&weight| Edge { from: 0, to: 1, weight })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn solver_examples() {
        let x = Weight::new(1, 0);
        let y = Weight::new(0, 1);
        assert_eq!(
            solve_transport(x, y, Weight::new(1, 1)),
            Some(TransportCoefficients { sign: 1, shift: 1 })
        );
        assert_eq!(
            solve_transport(x, y, Weight::new(2, -1)),
            Some(TransportCoefficients { sign: -1, shift: 2 })
        );
        assert_eq!(solve_transport(x, y, Weight::new(1, 2)), None);
        assert_eq!(solve_transport(x, Weight::new(3, 0), y), None);
    }

    #[test]
    fn theta_graph_admits_both_pairings_on_each_edge() {
        // Exhaustive check of the 2 candidate bijections per edge.
        let g = theta([Weight::new(1, 0), Weight::new(0, 1), Weight::new(1, 1)]);
        let space = ConnectionSpace::new(&g);
        assert_eq!(space.choices_per_edge(), vec![2, 2, 2]);
        assert_eq!(space.len(), 8);
        let all = enumerate_connections(&g);
        assert_eq!(all.len(), 8);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(space.index_of(c), Some(i as u128));
            assert_eq!(space.get(i as u128).as_ref(), Some(c));
        }
    }

    #[test]
    fn theta_with_rigid_labels_forces_identity_pairing() {
        // (1,5) = ±(1,2) + k(1,0) has no solution, so only f -> f survives.
        let g = theta([Weight::new(1, 0), Weight::new(1, 2), Weight::new(1, 5)]);
        assert_eq!(ConnectionSpace::new(&g).choices_per_edge(), vec![1, 1, 1]);
    }

    #[test]
    fn reverse_transition_composes_to_identity() {
        let g = theta([Weight::new(1, 0), Weight::new(0, 1), Weight::new(1, 1)]);
        for conn in enumerate_connections(&g) {
            for e in 0..3 {
                let fwd = transition(&g, &conn, DirectedEdge::forward(e)).unwrap();
                let bwd = transition(&g, &conn, DirectedEdge::backward(e)).unwrap();
                assert_eq!(small::mul(&bwd.matrix, &fwd.matrix), small::identity(3));
                assert_eq!(fwd.eta(), bwd.eta());
            }
        }
    }

    #[test]
    fn explicit_maps_are_checked() {
        let g = theta([Weight::new(1, 0), Weight::new(1, 2), Weight::new(1, 5)]);
        let swap = Connection::from_edge_maps(
            &g,
            &[
                (DirectedEdge::forward(0), vec![(1, 2), (2, 1)]),
                (DirectedEdge::forward(1), vec![]),
                (DirectedEdge::forward(2), vec![]),
            ],
        );
        assert!(matches!(swap, Err(GkmError::InvalidConnection(_))));
        let ok = Connection::from_edge_maps(
            &g,
            &[
                (DirectedEdge::forward(0), vec![(1, 1), (2, 2)]),
                (DirectedEdge::backward(1), vec![(0, 0), (2, 2)]),
                (DirectedEdge::forward(2), vec![(0, 0), (1, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_connections(&g), vec![ok]);
    }

    #[test]
    fn canonical_path_ignores_rotation_and_reversal() {
        let w = vec![
            DirectedEdge::forward(3),
            DirectedEdge::backward(1),
            DirectedEdge::forward(0),
        ];
        let c = ConnectionPath::canonical(&w);
        let rotated = vec![w[1], w[2], w[0]];
        assert_eq!(ConnectionPath::canonical(&rotated), c);
        assert_eq!(ConnectionPath::canonical(&c.reversed().edges), c);
    }
}
