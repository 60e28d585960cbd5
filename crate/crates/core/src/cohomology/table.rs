use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{ht_basis, multiply_by_generators, GradedPiece, HomogeneousElement, Ring};
use crate::graph::GkmGraph;
use crate::linalg::rational;

/// Rational data of one even degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub dim: usize,
    /// Rank of `x H^{degree-2}_T + y H^{degree-2}_T`.
    pub decomposable: usize,
    pub betti: usize,
    /// `sum_j b_{2j} (d - j + 1)`, the dimension a free module on the
    /// generators found so far would have.
    pub predicted_dim: usize,
}

/// Degreewise rational cohomology of a graph up to stabilization or the cap.
#[derive(Debug, Clone)]
pub struct CohomologyTable {
    pub vertices: usize,
    pub degree_cap: usize,
    pub degrees: Vec<DegreeSummary>,
    /// `H^{2d}_T` over `Q` per polynomial degree `d`.
    pub pieces: Vec<GradedPiece>,
    /// Reduced echelon basis of the decomposable part, per degree.
    decomposable: Vec<Vec<Vec<BigRational>>>,
    /// Rows of `pieces[d]` completing `decomposable[d]` to a basis; they
    /// project to a basis of `H^{2d}`.
    generators: Vec<Vec<Vec<BigInt>>>,
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiNumbers {
    /// `b_0, b_2, ...` through the last computed degree.
    pub values: Vec<usize>,
    pub total: usize,
    pub vertices: usize,
    pub degree_cap: usize,
    /// `true` when the total reached the vertex count and two further
    /// degrees vanished before the cap.
    pub stabilized: bool,
}

impl BettiNumbers {
    /// Betti numbers with trailing zeros removed.
    pub fn trimmed(&self) -> Vec<usize> {
        let end = self.values.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        self.values[..end].to_vec()
    }
}

impl CohomologyTable {
    /// Computes degrees `0, 2, 4, ...` until the Betti numbers stabilize or
    /// the cohomological degree would exceed `degree_cap`.
    pub fn compute(g: &GkmGraph, degree_cap: usize) -> Self {
        let mut table = CohomologyTable {
            vertices: g.vertex_count(),
            degree_cap,
            degrees: Vec::new(),
            pieces: Vec::new(),
            decomposable: Vec::new(),
            generators: Vec::new(),
            stabilized: false,
        };
        while 2 * table.pieces.len() <= degree_cap {
            table.push_degree(g);
            let total: usize = table.degrees.iter().map(|s| s.betti).sum();
            let tail_zero = table.degrees.len() >= 2
                && table.degrees[table.degrees.len() - 2..].iter().all(|s| s.betti == 0);
            if total >= table.vertices && tail_zero {
                table.stabilized = true;
                break;
            }
        }
        table
    }

    /// Extends the table by one degree, regardless of the cap.
    pub fn push_degree(&mut self, g: &GkmGraph) {
        let d = self.pieces.len();
        let piece = ht_basis(g, 2 * d, Ring::Q);
        let width = self.vertices * (d + 1);
        let mut image = match d {
            0 => Vec::new(),
            _ => rational::from_int_rows(&multiply_by_generators(
                self.vertices,
                d - 1,
                &self.pieces[d - 1].rows,
            )),
        };
        rational::rref(&mut image, width);
        let decomposable = image.len();

        let mut span = image.clone();
        let mut generators = Vec::new();
        for row in &piece.rows {
            let before = span.len();
            span.push(rational::from_int_rows(std::slice::from_ref(row)).remove(0));
            rational::rref(&mut span, width);
            if span.len() > before {
                generators.push(row.clone());
            }
        }
        let betti = piece.dim() - decomposable;
        debug_assert_eq!(betti, generators.len());
        let predicted_dim = self
            .degrees
            .iter()
            .enumerate()
            .map(|(j, s)| s.betti * (d - j + 1))
            .sum::<usize>()
            + betti;
        self.degrees.push(DegreeSummary {
            degree: 2 * d,
            dim: piece.dim(),
            decomposable,
            betti,
            predicted_dim,
        });
        self.pieces.push(piece);
        self.decomposable.push(image);
        self.generators.push(generators);
    }

    /// Ensures polynomial degree `d` is present.
    pub fn ensure_degree(&mut self, g: &GkmGraph, d: usize) {
        while self.pieces.len() <= d {
            self.push_degree(g);
        }
    }

    pub fn betti(&self) -> BettiNumbers {
        let values: Vec<usize> = self.degrees.iter().map(|s| s.betti).collect();
        BettiNumbers {
            total: values.iter().sum(),
            values,
            vertices: self.vertices,
            degree_cap: self.degree_cap,
            stabilized: self.stabilized,
        }
    }

    /// Polynomial degrees of the chosen generators, with multiplicity.
    pub fn generator_degrees(&self) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .flat_map(|(d, gens)| std::iter::repeat_n(d, gens.len()))
            .collect()
    }

    /// Representatives in `H_T` of a basis of `H^{2d}`.
    pub fn generators(&self, d: usize) -> Vec<HomogeneousElement> {
        self.generators[d]
            .iter()
            .map(|r| HomogeneousElement::from_flat(self.vertices, d, r))
            .collect()
    }

    /// Whether every computed degree matches the free-module prediction.
    pub fn free_prediction_holds(&self) -> bool {
        self.degrees.iter().all(|s| s.dim == s.predicted_dim)
    }

    /// Coordinates of the class of `f` in `H^{2d}` with respect to the
    /// chosen generators, or `None` if `f` is not in `H_T`.
    pub fn project_to_quotient(&self, f: &HomogeneousElement) -> Option<Vec<BigRational>> {
        let d = f.poly_degree;
        let mut basis = self.decomposable[d].clone();
        let offset = basis.len();
        basis.extend(rational::from_int_rows(&self.generators[d]));
        let target = rational::from_int_rows(&[f.flat()]).remove(0);
        let coeffs = rational::solve_in_span(&basis, &target)?;
        Some(coeffs[offset..].to_vec())
    }

    /// Whether the polynomial degree `d` has been computed.
    pub fn has_degree(&self, d: usize) -> bool {
        d < self.pieces.len()
    }
}

/// Betti numbers of `H^*(Γ, α; Q)` through `degree_cap`.
pub fn betti_numbers(g: &GkmGraph, degree_cap: usize) -> BettiNumbers {
    CohomologyTable::compute(g, degree_cap).betti()
}
