use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ht_basis, multiply_by_generators, CohomologyTable, HomogeneousElement, Ring};
use crate::error::{GkmError, Result};
use crate::graph::GkmGraph;
use crate::linalg::integer;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FreenessStatus {
    /// `H_T / R^+ H_T` is torsion-free in every degree through the bound.
    Certified { through_degree: usize },
    /// A class of finite order `order > 1` in `H^{degree}`.
    NotFree {
        degree: usize,
        #[serde(with = "crate::numeric::big")]
        order: BigInt,
        witness: HomogeneousElement,
    },
}

/// Integral structure of one even degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralDegree {
    pub degree: usize,
    /// Rank of the lattice `H^{degree}_T(Γ, α; Z)`.
    pub rank: usize,
    /// Rank of the free part of `H^{degree}`.
    pub free_rank: usize,
    /// Invariant factors greater than one.
    #[serde(with = "crate::numeric::vec")]
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub status: FreenessStatus,
    pub degree_cap: usize,
    /// The rational Betti numbers did not stabilize within the cap, so the
    /// certificate does not even cover all rational generators.
    pub partial: bool,
    pub degrees: Vec<IntegralDegree>,
}

impl FreenessReport {
    pub fn is_free(&self) -> bool {
        matches!(self.status, FreenessStatus::Certified { .. })
    }
}

/// Computes `(H_T / R^+ H_T)^{2d}` over `Z` for `2d <= degree_cap` and looks
/// for torsion. Stops at the first torsion class.
pub fn z_freeness(g: &GkmGraph, degree_cap: usize) -> Result<FreenessReport> {
    let table = CohomologyTable::compute(g, degree_cap);
    z_freeness_with_table(g, &table)
}

pub fn z_freeness_with_table(g: &GkmGraph, table: &CohomologyTable) -> Result<FreenessReport> {
    let degree_cap = table.degree_cap;
    let vertices = g.vertex_count();
    let mut degrees = Vec::new();
    let mut previous: Vec<Vec<BigInt>> = Vec::new();
    let mut status = None;
    for d in 0..=degree_cap / 2 {
        let lattice = ht_basis(g, 2 * d, Ring::Z).rows;
        let rel: Vec<Vec<BigInt>> = match d {
            0 => Vec::new(),
            _ => multiply_by_generators(vertices, d - 1, &previous)
                .iter()
                .map(|v| {
                    integer::coordinates_in_echelon(&lattice, v).ok_or_else(|| {
                        GkmError::Internal(format!("R^+ image leaves the lattice in degree {}", 2 * d))
                    })
                })
                .collect::<Result<_>>()?,
        };
        let smith = integer::smith(rel, lattice.len());
        let torsion = smith.torsion();
        if let Some(qd) = table.degrees.get(d) {
            if smith.free_rank() != qd.betti {
                return Err(GkmError::Internal(format!(
                    "integral and rational ranks differ in degree {}",
                    2 * d
                )));
            }
        }
        degrees.push(IntegralDegree {
            degree: 2 * d,
            rank: lattice.len(),
            free_rank: smith.free_rank(),
            torsion: torsion.iter().map(|(o, _)| o.clone()).collect(),
        });
        if let Some((order, coords)) = torsion.into_iter().next() {
            let mut flat = vec![BigInt::zero(); vertices * (d + 1)];
            for (c, row) in coords.iter().zip(&lattice) {
                for (f, x) in flat.iter_mut().zip(row) {
                    *f += c * x;
                }
            }
            status = Some(FreenessStatus::NotFree {
                degree: 2 * d,
                order,
                witness: HomogeneousElement::from_flat(vertices, d, &flat),
            });
            break;
        }
        previous = lattice;
    }
    Ok(FreenessReport {
        status: status.unwrap_or(FreenessStatus::Certified {
            through_degree: 2 * (degree_cap / 2),
        }),
        degree_cap,
        partial: !table.stabilized,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::tests::theta;

    #[test]
    fn theta_is_free() {
        let g = theta([(1, 0), (0, 1), (1, 1)]);
        let r = z_freeness(&g, 12).unwrap();
        assert!(r.is_free());
        assert!(!r.partial);
        assert_eq!(r.degrees.len(), 7);
    }
}
