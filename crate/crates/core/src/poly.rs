//! Homogeneous polynomials in `x, y` over `Z`.
//!
//! A degree-`d` polynomial is a coefficient vector of length `d + 1`; index
//! `j` holds the coefficient of `x^(d-j) y^j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::weight::Weight;

pub type Poly = Vec<BigInt>;

pub fn degree(p: &[BigInt]) -> usize {
    p.len() - 1
}

pub fn zero(d: usize) -> Poly {
    vec![BigInt::zero(); d + 1]
}

pub fn one() -> Poly {
    vec![BigInt::one()]
}

/// The linear form `a x + b y`.
pub fn linear(w: Weight) -> Poly {
    vec![w.a.into(), w.b.into()]
}

pub fn mul(p: &[BigInt], q: &[BigInt]) -> Poly {
    let mut out = zero(degree(p) + degree(q));
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
    factors.into_iter().fold(one(), |acc, f| mul(&acc, f))
}

pub fn mul_x(p: &[BigInt]) -> Poly {
    let mut out = p.to_vec();
    out.push(BigInt::zero());
    out
}

pub fn mul_y(p: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero()];
    out.extend_from_slice(p);
    out
}

pub fn scale(p: &[BigInt], c: &BigInt) -> Poly {
    p.iter().map(|x| x * c).collect()
}

pub fn add(p: &[BigInt], q: &[BigInt]) -> Poly {
    p.iter().zip(q).map(|(a, b)| a + b).collect()
}

pub fn sub(p: &[BigInt], q: &[BigInt]) -> Poly {
    p.iter().zip(q).map(|(a, b)| a - b).collect()
}

/// Row of the functional `p -> p(s, t)` on degree-`d` coefficient vectors.
pub fn evaluation_row(d: usize, s: i64, t: i64) -> Vec<BigInt> {
    let (s, t) = (BigInt::from(s), BigInt::from(t));
    (0..=d)
        .map(|j| num_traits::pow(s.clone(), d - j) * num_traits::pow(t.clone(), j))
        .collect()
}

/// For a primitive `beta = (a, b)`, the matrix `S` (rows indexed by output
/// coefficients) of the unimodular substitution `x = s X - b Y`,
/// `y = t X + a Y` with `a s + b t = 1`. Under it `a x + b y` becomes `X`,
/// so `p` is divisible by `beta` iff the `Y^d` coefficient of `S p` is zero.
pub fn substitution_matrix(beta: Weight, d: usize) -> Vec<Vec<BigInt>> {
    let ext = i64::extended_gcd(&beta.a, &beta.b);
    debug_assert_eq!(ext.gcd.abs(), 1, "weight must be primitive");
    let (s, t) = if ext.gcd == 1 { (ext.x, ext.y) } else { (-ext.x, -ext.y) };
    let x_img = vec![BigInt::from(s), BigInt::from(-beta.b)];
    let y_img = vec![BigInt::from(t), BigInt::from(beta.a)];
    let mut cols = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let xs = product(std::iter::repeat_n(&x_img, d - j));
        let ys = product(std::iter::repeat_n(&y_img, j));
        cols.push(mul(&xs, &ys));
    }
    (0..=d)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

pub fn apply(m: &[Vec<BigInt>], p: &[BigInt]) -> Poly {
    m.iter()
        .map(|row| row.iter().zip(p).map(|(a, b)| a * b).sum())
        .collect()
}

/// Exact division by the linear form of `w`, if it divides.
pub fn divide_linear(p: &[BigInt], w: Weight) -> Option<Poly> {
    let d = degree(p);
    if d == 0 {
        return p[0].is_zero().then(Vec::new);
    }
    let (a, b) = (BigInt::from(w.a), BigInt::from(w.b));
    let mut q = zero(d - 1);
    let mut rest = p.to_vec();
    // Eliminate from the x-heavy end when a != 0, else from the y end.
    if !a.is_zero() {
        for i in 0..d {
            let (c, r) = rest[i].div_rem(&a);
            if !r.is_zero() {
                return None;
            }
            rest[i + 1] -= &c * &b;
            rest[i] = BigInt::zero();
            q[i] = c;
        }
    } else {
        for i in (1..=d).rev() {
            let (c, r) = rest[i].div_rem(&b);
            if !r.is_zero() {
                return None;
            }
            rest[i] = BigInt::zero();
            q[i - 1] = c;
        }
    }
    rest.iter().all(Zero::is_zero).then_some(q)
}
