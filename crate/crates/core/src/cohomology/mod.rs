//! Equivariant graph cohomology over `Q` and `Z`.
//!
//! `H^{2d}_T` sits inside `⊕_v Z[x, y]_d`. An element is stored
//! vertex-major: coordinate `v * (d + 1) + j` is the coefficient of
//! `x^(d-j) y^j` at vertex `v`.

mod duality;
mod freeness;
mod table;
mod thom;

pub use duality::{
    h4_spanned_by_edge_classes, poincare_duality, vertex_classes_in_top_degree, EdgeClassSpan,
    PoincareDuality, TopClassImage,
};
pub use freeness::{z_freeness, z_freeness_with_table, FreenessReport, FreenessStatus, IntegralDegree};
pub use table::{betti_numbers, BettiNumbers, CohomologyTable, DegreeSummary};
pub use thom::{thom_edge, thom_vertex, ThomClass, ThomKind};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::graph::GkmGraph;
use crate::linalg::{integer, rational};
use crate::poly::{self, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Q,
    Z,
}

/// A tuple of homogeneous polynomials of a common degree, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousElement {
    /// Polynomial degree `d`; the cohomological degree is `2d`.
    pub poly_degree: usize,
    #[serde(with = "crate::numeric::matrix")]
    pub values: Vec<Poly>,
}

impl HomogeneousElement {
    pub fn zero(vertices: usize, poly_degree: usize) -> Self {
        HomogeneousElement {
            poly_degree,
            values: vec![poly::zero(poly_degree); vertices],
        }
    }

    /// The constant polynomial `p` at every vertex.
    pub fn constant(vertices: usize, p: &Poly) -> Self {
        HomogeneousElement {
            poly_degree: poly::degree(p),
            values: vec![p.clone(); vertices],
        }
    }

    pub fn from_flat(vertices: usize, poly_degree: usize, flat: &[BigInt]) -> Self {
        assert_eq!(flat.len(), vertices * (poly_degree + 1));
        HomogeneousElement {
            poly_degree,
            values: flat.chunks(poly_degree + 1).map(<[BigInt]>::to_vec).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        2 * self.poly_degree
    }

    pub fn flat(&self) -> Vec<BigInt> {
        self.values.concat()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    pub fn mul_poly(&self, p: &[BigInt]) -> Self {
        HomogeneousElement {
            poly_degree: self.poly_degree + poly::degree(p),
            values: self.values.iter().map(|v| poly::mul(v, p)).collect(),
        }
    }

    /// Vertexwise product.
    pub fn mul(&self, other: &Self) -> Self {
        HomogeneousElement {
            poly_degree: self.poly_degree + other.poly_degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| poly::mul(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        HomogeneousElement {
            poly_degree: self.poly_degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| poly::add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HomogeneousElement {
            poly_degree: self.poly_degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| poly::sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        HomogeneousElement {
            poly_degree: self.poly_degree,
            values: self.values.iter().map(|v| poly::scale(v, c)).collect(),
        }
    }

    /// Whether `f(from) - f(to)` is divisible by the edge weight in
    /// `Z[x, y]` for every edge.
    pub fn satisfies_congruences(&self, g: &GkmGraph) -> bool {
        g.edges().iter().all(|e| {
            let diff = poly::sub(&self.values[e.from], &self.values[e.to]);
            poly::divide_linear(&diff, e.weight).is_some()
        })
    }
}

/// A basis of `H^{2d}_T` inside the ambient coordinate space. Over `Q` the
/// rows are a reduced echelon basis scaled to primitive integer rows; over
/// `Z` they are the Hermite basis of the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub degree: usize,
    pub ring: Ring,
    pub vertices: usize,
    #[serde(with = "crate::numeric::matrix")]
    pub rows: Vec<Vec<BigInt>>,
}

impl GradedPiece {
    pub fn poly_degree(&self) -> usize {
        self.degree / 2
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices * (self.poly_degree() + 1)
    }

    pub fn element(&self, i: usize) -> HomogeneousElement {
        HomogeneousElement::from_flat(self.vertices, self.poly_degree(), &self.rows[i])
    }

    pub fn elements(&self) -> Vec<HomogeneousElement> {
        (0..self.dim()).map(|i| self.element(i)).collect()
    }

    pub fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        rational::from_int_rows(&self.rows)
    }
}

/// One row per edge: `f -> (f(from) - f(to))(b, -a)`, which vanishes exactly
/// when the difference is divisible by `a x + b y` over `Q`.
pub(crate) fn edge_functionals(g: &GkmGraph, d: usize) -> Vec<Vec<BigInt>> {
    let width = d + 1;
    g.edges()
        .iter()
        .map(|e| {
            let ev = poly::evaluation_row(d, e.weight.b, -e.weight.a);
            let mut row = vec![BigInt::zero(); g.vertex_count() * width];
            for (j, c) in ev.iter().enumerate() {
                row[e.from * width + j] += c;
                row[e.to * width + j] -= c;
            }
            row
        })
        .collect()
}

fn rational_piece(g: &GkmGraph, d: usize) -> Vec<Vec<BigInt>> {
    let n = g.vertex_count() * (d + 1);
    let a = rational::from_int_rows(&edge_functionals(g, d));
    let ker = rational::kernel(&a, n);
    rational::canonical_row_space(&ker, n)
}

/// Lattice of integral solutions. For `alpha = m * beta` with `beta`
/// primitive, substitute so that `beta` becomes `X`; the difference must have
/// no `Y^d` term and every other coefficient divisible by `m`. The second
/// condition introduces one slack variable per coefficient.
fn integral_piece(g: &GkmGraph, d: usize) -> Vec<Vec<BigInt>> {
    let width = d + 1;
    let n = g.vertex_count() * width;
    let mut slack = 0;
    let mut constraints: Vec<(Vec<BigInt>, Option<(usize, i64)>)> = Vec::new();
    for e in g.edges() {
        let m = e.weight.content();
        let s = poly::substitution_matrix(e.weight.primitive_part(), d);
        for (i, srow) in s.iter().enumerate() {
            let tail = i == d;
            if !tail && m == 1 {
                continue;
            }
            let mut row = vec![BigInt::zero(); n];
            for (j, c) in srow.iter().enumerate() {
                row[e.from * width + j] += c;
                row[e.to * width + j] -= c;
            }
            if tail {
                constraints.push((row, None));
            } else {
                constraints.push((row, Some((slack, m))));
                slack += 1;
            }
        }
    }
    let total = n + slack;
    let matrix: Vec<Vec<BigInt>> = constraints
        .into_iter()
        .map(|(mut row, extra)| {
            row.resize(total, BigInt::zero());
            if let Some((k, m)) = extra {
                row[n + k] = BigInt::from(-m);
            }
            row
        })
        .collect();
    let ker = integer::kernel(&matrix, total);
    let projected = ker.into_iter().map(|mut r| {
        r.truncate(n);
        r
    });
    integer::hnf(projected.collect(), n)
}

/// Basis of `H^{degree}_T` over the chosen ring. Odd degrees vanish.
pub fn ht_basis(g: &GkmGraph, degree: usize, ring: Ring) -> GradedPiece {
    let rows = if degree % 2 == 1 {
        Vec::new()
    } else {
        match ring {
            Ring::Q => rational_piece(g, degree / 2),
            Ring::Z => integral_piece(g, degree / 2),
        }
    };
    GradedPiece {
        degree,
        ring,
        vertices: g.vertex_count(),
        rows,
    }
}

/// Rows of `x * piece` and `y * piece` in the next polynomial degree.
pub(crate) fn multiply_by_generators(vertices: usize, d: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(2 * rows.len());
    for r in rows {
        let el = HomogeneousElement::from_flat(vertices, d, r);
        for var in [poly::mul_x as fn(&[BigInt]) -> Poly, poly::mul_y] {
            out.push(el.values.iter().flat_map(|p| var(p)).collect());
        }
    }
    out
}
