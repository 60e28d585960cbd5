//! Lattice computations over `Z`: row Hermite normal form, integer kernels,
//! and Smith normal form with the transform needed to name torsion classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Z = BigInt;

fn sub_multiple(target: &mut [Z], src: &[Z], q: &Z, from: usize) {
    for (t, s) in target.iter_mut().zip(src).skip(from) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Unimodular row reduction using pivots only in columns `0..pivot_cols`.
/// With `reduce_above`, entries above each pivot are brought into
/// `[0, pivot)`. Returns the number of pivot rows; they come first.
fn echelonize(rows: &mut [Vec<Z>], pivot_cols: usize, reduce_above: bool) -> usize {
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(b) = best else { break };
            rows.swap(r, b);
            let pivot = rows[r].clone();
            let mut clean = true;
            for row in rows.iter_mut().skip(r + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&pivot[c]);
                sub_multiple(row, &pivot, &q, c);
                if !row[c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r == rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        if reduce_above {
            let pivot = rows[r].clone();
            for row in rows.iter_mut().take(r) {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&pivot[c]);
                sub_multiple(row, &pivot, &q, c);
            }
        }
        r += 1;
    }
    r
}

/// Row Hermite normal form of the lattice spanned by `rows`: nonzero rows
/// only, positive pivots, entries above a pivot reduced into `[0, pivot)`.
pub fn hnf(mut rows: Vec<Vec<Z>>, ncols: usize) -> Vec<Vec<Z>> {
    let r = echelonize(&mut rows, ncols, true);
    rows.truncate(r);
    rows
}

/// Basis (in Hermite form) of the lattice `{x in Z^n : A x = 0}`.
pub fn kernel(a: &[Vec<Z>], ncols: usize) -> Vec<Vec<Z>> {
    let m = a.len();
    let mut rows: Vec<Vec<Z>> = (0..ncols)
        .map(|j| {
            let mut row: Vec<Z> = a.iter().map(|r| r[j].clone()).collect();
            row.extend((0..ncols).map(|k| if k == j { Z::one() } else { Z::zero() }));
            row
        })
        .collect();
    let rank = echelonize(&mut rows, m, false);
    let basis = rows[rank..].iter().map(|r| r[m..].to_vec()).collect();
    hnf(basis, ncols)
}

/// Integer coordinates of `v` with respect to an echelon basis, if `v` lies
/// in the lattice.
pub fn coordinates_in_echelon(basis: &[Vec<Z>], v: &[Z]) -> Option<Vec<Z>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        sub_multiple(&mut rest, row, &q, p);
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Smith normal form `P M Q = D`. Only what the quotient `Z^n / rowspace(M)`
/// needs is kept: the diagonal and `Q^{-1}`, whose row `i` represents the
/// generator of the `i`-th cyclic summand.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<Z>,
    pub right_inverse: Vec<Vec<Z>>,
}

impl Smith {
    /// Invariant factors of `Z^n / rowspace(M)` that exceed one, paired with
    /// a representative vector of the corresponding cyclic summand.
    pub fn torsion(&self) -> Vec<(Z, Vec<Z>)> {
        self.diagonal
            .iter()
            .enumerate()
            .filter(|(_, d)| *d > &Z::one())
            .map(|(i, d)| (d.clone(), self.right_inverse[i].clone()))
            .collect()
    }

    /// Rank of the free part of `Z^n / rowspace(M)`.
    pub fn free_rank(&self) -> usize {
        let n = self.right_inverse.len();
        n - self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith(mut m: Vec<Vec<Z>>, ncols: usize) -> Smith {
    let nrows = m.len();
    let mut qinv: Vec<Vec<Z>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let mut diagonal = Vec::new();

    let swap_cols = |m: &mut Vec<Vec<Z>>, qinv: &mut Vec<Vec<Z>>, a: usize, b: usize| {
        if a != b {
            for row in m.iter_mut() {
                row.swap(a, b);
            }
            qinv.swap(a, b);
        }
    };

    for t in 0..nrows.min(ncols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        swap_cols(&mut m, &mut qinv, t, bj);

        loop {
            let pivot_row = m[t].clone();
            for row in m.iter_mut().skip(t + 1) {
                if !row[t].is_zero() {
                    let q = row[t].div_floor(&pivot_row[t]);
                    sub_multiple(row, &pivot_row, &q, t);
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut() {
                    if !row[t].is_zero() {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                let src = qinv[j].clone();
                for (x, s) in qinv[t].iter_mut().zip(&src) {
                    if !s.is_zero() {
                        *x += &q * s;
                    }
                }
            }

            let col_rest = (t + 1..nrows).find(|&i| !m[i][t].is_zero());
            let row_rest = (t + 1..ncols).find(|&j| !m[t][j].is_zero());
            if col_rest.is_some() || row_rest.is_some() {
                // A remainder smaller than the pivot survived; move it in.
                let mut cand = (t, t);
                for i in t + 1..nrows {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[cand.0][cand.1].abs() {
                        cand = (i, t);
                    }
                }
                for j in t + 1..ncols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[cand.0][cand.1].abs() {
                        cand = (t, j);
                    }
                }
                m.swap(t, cand.0);
                swap_cols(&mut m, &mut qinv, t, cand.1);
                continue;
            }

            let bad = (t + 1..nrows).find_map(|i| {
                (t + 1..ncols)
                    .find(|&j| !m[i][j].is_multiple_of(&m[t][t]))
                    .map(|_| i)
            });
            match bad {
                Some(i) => {
                    let src = m[i].clone();
                    for (x, s) in m[t].iter_mut().zip(&src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(m[t][t].clone());
    }
    Smith { diagonal, right_inverse: qinv }
}

/// Determinant of the 2x2 matrix with rows `(a, b)` and `(c, d)`.
pub fn det2(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a * d - b * c
}
