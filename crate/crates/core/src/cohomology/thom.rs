use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::HomogeneousElement;
use crate::connection::{transition, Connection};
use crate::error::{GkmError, Result};
use crate::graph::{DirectedEdge, GkmGraph, VertexId};
use crate::poly::{self, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ThomKind {
    Vertex { vertex: VertexId },
    /// Relative to the direction: the source carries the plain product.
    Edge { edge: DirectedEdge },
}

/// A Thom class relative to the stored weight lifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomClass {
    pub kind: ThomKind,
    pub element: HomogeneousElement,
}

impl ThomClass {
    /// `s` with `alpha(e) Th_e = Th_v + s Th_w` for an edge class `v -> w`.
    pub fn edge_relation_sign(&self, g: &GkmGraph) -> Result<i64> {
        let ThomKind::Edge { edge } = self.kind else {
            return Err(GkmError::Precondition("not an edge class".into()));
        };
        let lhs = self.element.mul_poly(&poly::linear(g.weight(edge.edge)));
        let tv = thom_vertex(g, g.source(edge))?.element;
        let tw = thom_vertex(g, g.target(edge))?.element;
        if lhs == tv.add(&tw) {
            Ok(1)
        } else if lhs == tv.sub(&tw) {
            Ok(-1)
        } else {
            Err(GkmError::Internal(format!(
                "edge class of {} is not (Th_v ± Th_w) / alpha",
                edge.edge
            )))
        }
    }
}

fn product_at(g: &GkmGraph, v: VertexId, skip: Option<usize>) -> Poly {
    let factors: Vec<Poly> = g
        .incident(v)
        .iter()
        .filter(|&&e| Some(e) != skip)
        .map(|&e| poly::linear(g.weight(e)))
        .collect();
    poly::product(&factors)
}

fn checked(g: &GkmGraph, kind: ThomKind, element: HomogeneousElement) -> Result<ThomClass> {
    if !element.satisfies_congruences(g) {
        return Err(GkmError::Internal(format!("{kind:?} violates an edge congruence")));
    }
    Ok(ThomClass { kind, element })
}

/// The product of the weights at `v`, supported at `v`.
pub fn thom_vertex(g: &GkmGraph, v: VertexId) -> Result<ThomClass> {
    let valence = g.incident(v).len();
    let mut element = HomogeneousElement::zero(g.vertex_count(), valence);
    element.values[v] = product_at(g, v, None);
    checked(g, ThomKind::Vertex { vertex: v }, element)
}

/// The class of `d: v -> w`: the product of the other weights at `v`, and at
/// `w` the product of the other weights times `prod eps_i`.
pub fn thom_edge(g: &GkmGraph, conn: &Connection, d: DirectedEdge) -> Result<ThomClass> {
    let t = transition(g, conn, d)?;
    let sign: i64 = t
        .coefficients
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != t.fixed_position)
        .map(|(_, c)| c.sign)
        .product();
    let degree = g.incident(t.source).len() - 1;
    let mut element = HomogeneousElement::zero(g.vertex_count(), degree);
    element.values[t.source] = product_at(g, t.source, Some(d.edge));
    element.values[t.target] = poly::scale(&product_at(g, t.target, Some(d.edge)), &BigInt::from(sign));
    checked(g, ThomKind::Edge { edge: d }, element)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::tests::theta;
    use crate::connection::enumerate_connections;

    #[test]
    fn theta_vertex_class() {
        let g = theta([(1, 0), (0, 1), (1, 1)]);
        let t = thom_vertex(&g, 0).unwrap();
        let expected: Poly = [0, 1, 1, 0].map(BigInt::from).to_vec();
        assert_eq!(t.element.values[0], expected);
        assert_eq!(t.element.values[1], poly::zero(3));
    }

    #[test]
    fn theta_edge_classes_do_not_depend_on_connection() {
        let g = theta([(1, 0), (0, 1), (1, 1)]);
        let conns = enumerate_connections(&g);
        assert!(conns.len() > 1);
        for e in 0..3 {
            for d in [DirectedEdge::forward(e), DirectedEdge::backward(e)] {
                let first = thom_edge(&g, &conns[0], d).unwrap();
                for c in &conns[1..] {
                    assert_eq!(thom_edge(&g, c, d).unwrap(), first);
                }
                let s = first.edge_relation_sign(&g).unwrap();
                assert_eq!(s.abs(), 1);
            }
        }
    }
}
