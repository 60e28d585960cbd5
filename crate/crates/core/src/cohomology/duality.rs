use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{thom_edge, thom_vertex, CohomologyTable, HomogeneousElement, Ring};
use crate::connection::Connection;
use crate::error::Result;
use crate::graph::{DirectedEdge, GkmGraph, VertexId};
use crate::linalg::rational;

/// Image of a vertex Thom class in the top degree of the quotient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopClassImage {
    pub vertex: VertexId,
    /// Coordinates with respect to the chosen basis of `H^6`, as fractions.
    pub coordinates: Vec<String>,
    pub nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareDuality {
    /// `None` when the degree cap is too small to decide.
    pub pd: Option<bool>,
    /// First failing clause, or the reason for refusing.
    pub reason: Option<String>,
    /// `b_0, b_2, b_4, b_6`.
    pub betti: Vec<usize>,
    /// Whether the Betti numbers through degree 6 already account for all
    /// vertices, so every higher Betti number vanishes.
    pub higher_vanish: bool,
    /// Shape `[b_2, b_4]` of the pairing `H^2 x H^4 -> H^6`.
    pub pairing_shape: [usize; 2],
    pub pairing_rank: usize,
    pub top_class: Vec<TopClassImage>,
}

fn fraction(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Coordinates of every vertex Thom class in `H^{2n}`.
pub fn vertex_classes_in_top_degree(g: &GkmGraph, table: &mut CohomologyTable) -> Result<Vec<TopClassImage>> {
    let Some(n) = g.valence() else { return Ok(Vec::new()) };
    table.ensure_degree(g, n);
    (0..g.vertex_count())
        .map(|v| {
            let th = thom_vertex(g, v)?.element;
            let coords = table.project_to_quotient(&th).ok_or_else(|| {
                crate::error::GkmError::Internal(format!("Thom class of vertex {v} not in H_T"))
            })?;
            Ok(TopClassImage {
                vertex: v,
                nonzero: coords.iter().any(|c| !c.is_zero()),
                coordinates: coords.iter().map(fraction).collect(),
            })
        })
        .collect()
}

impl PoincareDuality {
    /// Decides six-dimensional Poincaré duality. Refuses only when the cap
    /// is below 6. Since the Betti numbers add up to the vertex count, a
    /// shortfall through degree 6 means some higher Betti number is nonzero.
    pub fn from_table(g: &GkmGraph, table: &mut CohomologyTable) -> Result<Self> {
        let mut out = PoincareDuality {
            pd: None,
            reason: None,
            betti: Vec::new(),
            higher_vanish: false,
            pairing_shape: [0, 0],
            pairing_rank: 0,
            top_class: Vec::new(),
        };
        if table.degree_cap < 6 {
            out.reason = Some(format!("degree cap {} is below 6", table.degree_cap));
            return Ok(out);
        }
        table.ensure_degree(g, 3);
        let b: Vec<usize> = table.degrees[..4].iter().map(|s| s.betti).collect();
        out.betti = b.clone();
        out.higher_vanish = b.iter().sum::<usize>() == g.vertex_count();
        if g.valence() == Some(3) {
            out.top_class = vertex_classes_in_top_degree(g, table)?;
        }

        let failure = if b[0] != 1 {
            Some(format!("b0 = {}", b[0]))
        } else if b[3] != 1 {
            Some(format!("b6 = {}", b[3]))
        } else if b[1] != b[2] {
            Some(format!("b2 = {} differs from b4 = {}", b[1], b[2]))
        } else if !out.higher_vanish {
            Some("nonzero Betti number above degree 6".to_string())
        } else {
            None
        };
        if failure.is_none() || b[3] == 1 {
            let h2 = table.generators(1);
            let h4 = table.generators(2);
            out.pairing_shape = [h2.len(), h4.len()];
            let mut matrix = Vec::with_capacity(h2.len());
            for a in &h2 {
                let mut row = Vec::with_capacity(h4.len());
                for c in &h4 {
                    let coords = table.project_to_quotient(&a.mul(c)).ok_or_else(|| {
                        crate::error::GkmError::Internal("product left H_T".into())
                    })?;
                    row.push(coords[0].clone());
                }
                matrix.push(row);
            }
            out.pairing_rank = rational::rank(&matrix, h4.len());
        }
        let failure = failure.or_else(|| {
            (out.pairing_rank < b[1]).then(|| {
                format!("pairing H2 x H4 -> H6 has rank {} < {}", out.pairing_rank, b[1])
            })
        });
        out.pd = Some(failure.is_none());
        out.reason = failure;
        Ok(out)
    }
}

pub fn poincare_duality(g: &GkmGraph, degree_cap: usize) -> Result<PoincareDuality> {
    let mut table = CohomologyTable::compute(g, degree_cap);
    PoincareDuality::from_table(g, &mut table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClassSpan {
    pub spanned: bool,
    pub rank: usize,
    pub dim: usize,
}

/// Whether the edge Thom classes together with the constants of degree
/// `2n - 2` span `H^{2n-2}_T` over `Q`.
pub fn h4_spanned_by_edge_classes(g: &GkmGraph, conn: &Connection) -> Result<EdgeClassSpan> {
    let n = g.valence().unwrap_or(0);
    let d = n.saturating_sub(1);
    let dim = super::ht_basis(g, 2 * d, Ring::Q).dim();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..=d {
        let mut mono = vec![BigInt::zero(); d + 1];
        mono[j] = BigInt::one();
        rows.push(HomogeneousElement::constant(g.vertex_count(), &mono).flat());
    }
    for e in 0..g.edge_count() {
        rows.push(thom_edge(g, conn, DirectedEdge::forward(e))?.element.flat());
    }
    let rank = rational::rank(&rational::from_int_rows(&rows), g.vertex_count() * (d + 1));
    Ok(EdgeClassSpan { spanned: rank == dim, rank, dim })
}
