//! Independent reference computations for the integration tests.
//!
//! Nothing here calls the library's linear algebra or cohomology code. The
//! equivariant cohomology is set up in its lifted form: unknowns are the
//! vertex polynomials `f_v` and one quotient `q_e` per edge with
//! `f(from) - f(to) = alpha(e) q_e`, so divisibility over `Z` is encoded
//! directly instead of through substitutions.
#![allow(dead_code)]

use std::path::PathBuf;

use gkm_core::format::{parse_graph_file, GraphFile};
use gkm_core::{Connection, DirectedEdge, Edge, GkmGraph, Weight};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn corpus_dir() -> PathBuf {
    std::env::var_os("GKM_CORPUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

pub fn load(name: &str) -> GraphFile {
    let path = corpus_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_graph_file(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub const CORPUS: [&str; 4] = ["cube", "flag", "nonorientable", "theta"];

// ---------------------------------------------------------------- lifted system

/// Integer matrix of the lifted system; the first `|V| (d + 1)` columns are
/// the vertex coefficients.
pub fn lifted_system(g: &GkmGraph, d: usize) -> (Vec<Vec<Z>>, usize) {
    let width = d + 1;
    let nf = g.vertex_count() * width;
    let nq = g.edge_count() * d;
    let mut rows = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        for k in 0..=d {
            let mut row = vec![Z::zero(); nf + nq];
            row[edge.from * width + k] += 1;
            row[edge.to * width + k] -= 1;
            // Coefficient k of (a x + b y) q with q of degree d - 1.
            if k < d {
                row[nf + e * d + k] -= Z::from(edge.weight.a);
            }
            if k >= 1 {
                row[nf + e * d + k - 1] -= Z::from(edge.weight.b);
            }
            rows.push(row);
        }
    }
    (rows, nf)
}

// ---------------------------------------------------------------- over Q

pub fn to_q(rows: &[Vec<Z>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect()
}

/// Gauss-Jordan elimination; returns the nonzero rows and pivot columns.
pub fn gauss(mut m: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Q::one() / m[row][col].clone();
        m[row] = m[row].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pr = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    gauss(rows.to_vec()).0.len()
}

/// Basis of the null space of `a` (with `n` columns).
pub fn null_space(a: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = if a.is_empty() { (Vec::new(), Vec::new()) } else { gauss(a.to_vec()) };
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// `H^{2d}_T` over `Q` as a list of spanning vectors (a basis).
pub fn oracle_q_space(g: &GkmGraph, d: usize) -> Vec<Vec<Q>> {
    let (a, nf) = lifted_system(g, d);
    let n = a.first().map_or(nf, Vec::len);
    let ker = null_space(&to_q(&a), n);
    let projected: Vec<Vec<Q>> = ker.into_iter().map(|v| v[..nf].to_vec()).collect();
    if projected.is_empty() {
        return projected;
    }
    gauss(projected).0
}

pub fn same_subspace(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let ra = rank_q(a);
    let rb = rank_q(b);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && rank_q(&both) == ra
}

pub fn in_span(basis: &[Vec<Q>], v: &[Q]) -> bool {
    let mut both = basis.to_vec();
    both.push(v.to_vec());
    rank_q(&both) == rank_q(basis)
}

/// Multiplies a vertex-major element of polynomial degree `d` by `x` or `y`.
pub fn times_var(v: &[Q], vertices: usize, d: usize, by_y: bool) -> Vec<Q> {
    let mut out = Vec::with_capacity(vertices * (d + 2));
    for chunk in v.chunks(d + 1) {
        if by_y {
            out.push(Q::zero());
            out.extend_from_slice(chunk);
        } else {
            out.extend_from_slice(chunk);
            out.push(Q::zero());
        }
    }
    debug_assert_eq!(out.len(), vertices * (d + 2));
    out
}

/// `x H^{2d-2}_T + y H^{2d-2}_T` from a basis of the lower piece.
pub fn decomposables(lower: &[Vec<Q>], vertices: usize, d: usize) -> Vec<Vec<Q>> {
    lower
        .iter()
        .flat_map(|v| [times_var(v, vertices, d - 1, false), times_var(v, vertices, d - 1, true)])
        .collect()
}

/// Betti numbers `b_0, b_2, ...` through polynomial degree `max_d`.
pub fn oracle_betti(g: &GkmGraph, max_d: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut prev: Vec<Vec<Q>> = Vec::new();
    for d in 0..=max_d {
        let here = oracle_q_space(g, d);
        let image = if d == 0 { 0 } else { rank_q(&decomposables(&prev, n, d)) };
        out.push(here.len() - image);
        prev = here;
    }
    out
}

// ---------------------------------------------------------------- over Z

/// Integer kernel by unimodular column operations: reduce `a` to column
/// echelon form while tracking the transform; the transform columns that
/// end up over zero columns span the kernel.
pub fn integer_kernel(a: &[Vec<Z>], n: usize) -> Vec<Vec<Z>> {
    let mut m: Vec<Vec<Z>> = a.to_vec();
    let mut u: Vec<Vec<Z>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<Z>>, u: &mut Vec<Vec<Z>>, target: usize, src: usize, q: &Z| {
        for row in m.iter_mut().chain(u.iter_mut()) {
            let s = row[src].clone();
            row[target] -= q * s;
        }
    };
    let swap = |m: &mut Vec<Vec<Z>>, u: &mut Vec<Vec<Z>>, i: usize, j: usize| {
        for row in m.iter_mut().chain(u.iter_mut()) {
            row.swap(i, j);
        }
    };
    let mut c = 0;
    for r in 0..m.len() {
        if c == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (c..n).filter(|&j| !m[r][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| m[r][j].abs()).unwrap();
            swap(&mut m, &mut u, c, p);
            let mut done = true;
            for j in c + 1..n {
                if !m[r][j].is_zero() {
                    let q = m[r][j].div_floor(&m[r][c]);
                    col_op(&mut m, &mut u, j, c, &q);
                    if !m[r][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                c += 1;
                break;
            }
        }
    }
    (c..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Row Hermite normal form via Bezout 2x2 transforms.
pub fn oracle_hnf(rows: Vec<Vec<Z>>) -> Vec<Vec<Z>> {
    let mut m = rows;
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            let e = a.extended_gcd(&b);
            let (ga, gb) = (&a / &e.gcd, &b / &e.gcd);
            let (top, bottom): (Vec<Z>, Vec<Z>) = m[r]
                .iter()
                .zip(&m[i])
                .map(|(x, y)| (&e.x * x + &e.y * y, &ga * y - &gb * x))
                .unzip();
            m[r] = top;
            m[i] = bottom;
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            m[r] = m[r].iter().map(|x| -x).collect();
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// `H^{2d}_T(Γ, α; Z)` as a Hermite basis.
pub fn oracle_z_lattice(g: &GkmGraph, d: usize) -> Vec<Vec<Z>> {
    let (a, nf) = lifted_system(g, d);
    let n = a.first().map_or(nf, Vec::len);
    let ker = integer_kernel(&a, n);
    oracle_hnf(ker.into_iter().map(|v| v[..nf].to_vec()).collect())
}

/// Membership of `v` in the lattice with Hermite basis `h`.
pub fn in_lattice(h: &[Vec<Z>], v: &[Z]) -> bool {
    let mut rest = v.to_vec();
    for row in h {
        let p = row.iter().position(|x| !x.is_zero()).unwrap();
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    rest.iter().all(Zero::is_zero)
}

pub fn same_lattice(a: &[Vec<Z>], b: &[Vec<Z>]) -> bool {
    let ha = oracle_hnf(a.to_vec());
    let hb = oracle_hnf(b.to_vec());
    ha.len() == hb.len()
        && a.iter().all(|v| in_lattice(&hb, v))
        && b.iter().all(|v| in_lattice(&ha, v))
}

// ---------------------------------------------------------------- small helpers

pub fn det3(m: &[Vec<i64>]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn inversion_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Connection paths traced directly from the transport maps, as cyclic
/// words of directed edges (not deduplicated by orientation).
pub fn traced_path_lengths(g: &GkmGraph, conn: &Connection) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut lengths = Vec::new();
    for e in 0..g.edge_count() {
        for d in [DirectedEdge::forward(e), DirectedEdge::backward(e)] {
            for &p in g.incident(g.source(d)) {
                if p == e || seen.contains(&(d, p)) {
                    continue;
                }
                let mut state = (d, p);
                let mut len = 0;
                loop {
                    seen.insert(state);
                    len += 1;
                    let (cur, prev) = state;
                    let next = conn.transport(g, cur, prev);
                    let w = g.target(cur);
                    let nd = if g.edge(next).from == w {
                        DirectedEdge::forward(next)
                    } else {
                        DirectedEdge::backward(next)
                    };
                    state = (nd, cur.edge);
                    if state == (d, p) {
                        break;
                    }
                }
                lengths.push(len);
            }
        }
    }
    // Each geometric path is traced once per orientation.
    lengths.sort_unstable();
    lengths.into_iter().step_by(2).collect()
}

// ---------------------------------------------------------------- relabelling

/// A relabelled copy of a graph file: vertex `v` becomes `vperm[v]`, edge `e`
/// becomes `eperm[e]`, and `flip` negates the lifts of the listed (old) edges.
pub fn relabel(
    file: &GraphFile,
    vperm: &[usize],
    eperm: &[usize],
    flip: &[usize],
) -> (GkmGraph, Option<Connection>) {
    let g = &file.graph;
    let mut names = vec![String::new(); g.vertex_count()];
    for (v, &nv) in vperm.iter().enumerate() {
        names[nv] = g.vertex_name(v).to_string();
    }
    let mut edges = vec![None; g.edge_count()];
    for (e, &ne) in eperm.iter().enumerate() {
        let old = g.edge(e);
        let weight = if flip.contains(&e) { old.weight.negated() } else { old.weight };
        edges[ne] = Some(Edge { from: vperm[old.from], to: vperm[old.to], weight });
    }
    let h = GkmGraph::new(
        g.name().map(str::to_string),
        names,
        edges.into_iter().map(Option::unwrap).collect(),
    )
    .unwrap();
    let conn = file.connection.as_ref().map(|c| {
        let maps: Vec<_> = (0..g.edge_count())
            .map(|e| {
                let pairs = c
                    .edge_map(g, DirectedEdge::forward(e))
                    .into_iter()
                    .map(|(f, img)| (eperm[f], eperm[img]))
                    .collect();
                (DirectedEdge::forward(eperm[e]), pairs)
            })
            .collect();
        Connection::from_edge_maps(&h, &maps).unwrap()
    });
    (h, conn)
}

pub fn weight(a: i64, b: i64) -> Weight {
    Weight::new(a, b)
}

/// Surface orientability by brute force over polygon orientations: some
/// choice must traverse every edge once in each direction.
pub fn brute_force_orientable(paths: &[Vec<DirectedEdge>], edges: usize) -> bool {
    assert!(paths.len() < 20, "too many polygons for brute force");
    (0u32..1 << paths.len()).any(|mask| {
        let mut count = vec![[0usize; 2]; edges];
        for (i, p) in paths.iter().enumerate() {
            let flip = mask >> i & 1 == 1;
            for d in p {
                count[d.edge][usize::from(d.forward != flip)] += 1;
            }
        }
        count.iter().all(|c| c[0] == 1 && c[1] == 1)
    })
}

/// Transition matrix rebuilt from the weights: column `j` is `eps_j` at the
/// image row plus `k_j` in the column of the edge itself.
pub fn rebuilt_transition(g: &GkmGraph, conn: &Connection, d: DirectedEdge) -> (Vec<usize>, Vec<Vec<i64>>, Vec<i64>) {
    let (v, w) = (g.source(d), g.target(d));
    let al = g.weight(d.edge);
    let at_v = g.incident(v);
    let at_w = g.incident(w);
    let n = at_v.len();
    let m = at_v.iter().position(|&f| f == d.edge).unwrap();
    let mut sigma = Vec::new();
    let mut eps = Vec::new();
    let mut phi = vec![vec![0i64; n]; n];
    for (j, &f) in at_v.iter().enumerate() {
        let img = conn.transport(g, d, f);
        let i = at_w.iter().position(|&x| x == img).unwrap();
        sigma.push(i);
        if j == m {
            phi[i][j] = 1;
            eps.push(1);
            continue;
        }
        let (wf, wi) = (g.weight(f), g.weight(img));
        // wi = e wf + k al, solved by Cramer's rule.
        let den = wf.a * al.b - wf.b * al.a;
        let e_num = wi.a * al.b - wi.b * al.a;
        let k_num = wf.a * wi.b - wf.b * wi.a;
        assert!(e_num % den == 0 && k_num % den == 0, "non-integral transport");
        phi[i][j] = e_num / den;
        phi[i][m] = k_num / den;
        eps.push(e_num / den);
    }
    (sigma, phi, eps)
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}
