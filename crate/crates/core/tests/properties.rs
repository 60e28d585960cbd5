mod common;

use common::*;
use gkm_core::cohomology::{ht_basis, Ring};
use gkm_core::connection::ConnectionSpace;
use gkm_core::format::{parse_graph_file, serialize_graph, GraphFile};
use gkm_core::orientation::is_orientable;
use gkm_core::surface::{build_surface, classify_surface, SurfaceComplex};
use gkm_core::validate::{connected_isotropy_check, elementary_divisors_at, is_effective_at, validate};
use gkm_core::{Connection, ConnectionPath, Edge, GkmGraph, Weight};
use proptest::prelude::*;

fn arb_weight(bound: i64) -> impl Strategy<Value = Weight> {
    (-bound..=bound, -bound..=bound)
        .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| Weight::new(a, b))
}

/// Small multigraphs without loops; not necessarily valid.
fn arb_graph(bound: i64) -> impl Strategy<Value = GkmGraph> {
    (2usize..6).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 1..n, arb_weight(bound)), 1..10).prop_map(move |raw| {
            let edges = raw
                .into_iter()
                .map(|(from, shift, weight)| Edge { from, to: (from + shift) % n, weight })
                .collect();
            GkmGraph::new(Some("random".into()), (0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
        })
    })
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
}

/// A corpus graph with one of its connections.
fn arb_corpus() -> impl Strategy<Value = GraphFile> {
    (0..CORPUS.len(), any::<u64>()).prop_map(|(i, pick)| {
        let mut file = load(CORPUS[i]);
        let space = ConnectionSpace::new(&file.graph);
        file.connection = space.get(u128::from(pick) % space.len());
        file
    })
}

fn arb_relabelled_corpus() -> impl Strategy<Value = (GraphFile, Vec<usize>, Vec<usize>, Vec<usize>)> {
    arb_corpus().prop_flat_map(|file| {
        let (nv, ne) = (file.graph.vertex_count(), file.graph.edge_count());
        (Just(file), perm(nv), perm(ne), subset(ne))
    })
}

fn file_of(graph: GkmGraph) -> GraphFile {
    GraphFile { graph, description: None, connection: None, warnings: Vec::new() }
}

fn failure_kinds(g: &GkmGraph) -> Vec<String> {
    let mut kinds: Vec<String> = validate(g)
        .failures
        .iter()
        .map(|f| serde_json::to_value(f).unwrap()["kind"].to_string())
        .collect();
    kinds.sort();
    kinds
}

fn rotate(p: &ConnectionPath, r: usize, reverse: bool) -> ConnectionPath {
    let base = if reverse { p.reversed() } else { p.clone() };
    let n = base.len();
    ConnectionPath { edges: (0..n).map(|i| base.edges[(i + r) % n]).collect() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_canonicalization(g in arb_graph(6)) {
        let back = parse_graph_file(&serialize_graph(&g, None)).unwrap();
        prop_assert_eq!(back.graph, g.canonicalized());
        prop_assert!(back.warnings.is_empty());
    }

    #[test]
    fn connections_survive_a_round_trip(file in arb_corpus()) {
        let text = serialize_graph(&file.graph, file.connection.as_ref());
        let back = parse_graph_file(&text).unwrap();
        prop_assert_eq!(back.graph, file.graph);
        prop_assert_eq!(back.connection, file.connection);
    }

    #[test]
    fn validation_ignores_order_and_lifts(
        (g, vp, ep, flip) in arb_graph(4).prop_flat_map(|g| {
            let (nv, ne) = (g.vertex_count(), g.edge_count());
            (Just(g), perm(nv), perm(ne), subset(ne))
        })
    ) {
        let (h, _) = relabel(&file_of(g.clone()), &vp, &ep, &flip);
        let (a, b) = (validate(&g), validate(&h));
        prop_assert_eq!(a.ok, b.ok);
        prop_assert_eq!(a.valence, b.valence);
        prop_assert_eq!(failure_kinds(&g), failure_kinds(&h));
        prop_assert_eq!(
            connected_isotropy_check(&g).failing_determinants(),
            connected_isotropy_check(&h).failing_determinants()
        );
    }

    #[test]
    fn corpus_validation_ignores_order_and_lifts((file, vp, ep, flip) in arb_relabelled_corpus()) {
        let (h, conn) = relabel(&file, &vp, &ep, &flip);
        prop_assert!(validate(&h).ok);
        let conn = conn.unwrap();
        let before = is_orientable(&file.graph, file.connection.as_ref().unwrap()).unwrap();
        let after = is_orientable(&h, &conn).unwrap();
        prop_assert_eq!(before.orientable, after.orientable);
        prop_assert!(after.verify(&h));
        let chi = |g: &GkmGraph, c: &Connection| classify_surface(&build_surface(g, c).unwrap());
        prop_assert_eq!(chi(&file.graph, file.connection.as_ref().unwrap()), chi(&h, &conn));
    }

    #[test]
    fn effectivity_ignores_sign_flips(
        (g, flip) in arb_graph(5).prop_flat_map(|g| { let ne = g.edge_count(); (Just(g), subset(ne)) })
    ) {
        let mut h = g.clone();
        for &e in &flip {
            h = h.with_negated_weight(e);
        }
        for v in 0..g.vertex_count() {
            prop_assert_eq!(is_effective_at(&g, v), is_effective_at(&h, v));
            prop_assert_eq!(elementary_divisors_at(&g, v), elementary_divisors_at(&h, v));
        }
    }

    #[test]
    fn connected_isotropy_implies_validity_clauses(g in arb_graph(2)) {
        // A single weight never spans the lattice, so effectivity is only
        // implied where at least two edges meet.
        if connected_isotropy_check(&g).ok {
            let kinds = failure_kinds(&g);
            prop_assert!(kinds.iter().all(|k| !k.contains("dependence")), "{:?}", kinds);
            for v in 0..g.vertex_count() {
                if g.incident(v).len() >= 2 {
                    prop_assert!(is_effective_at(&g, v));
                }
            }
        }
    }

    #[test]
    fn surface_class_ignores_path_presentation(
        (file, moves) in arb_corpus().prop_flat_map(|f| {
            (Just(f), prop::collection::vec((0usize..16, any::<bool>()), 16))
        })
    ) {
        let g = &file.graph;
        let complex = build_surface(g, file.connection.as_ref().unwrap()).unwrap();
        let moved = SurfaceComplex {
            polygons: complex
                .polygons
                .iter()
                .zip(&moves)
                .map(|(p, &(r, rev))| rotate(p, r % p.len(), rev))
                .collect(),
            ..complex.clone()
        };
        prop_assert!(moved.check_closed().is_ok());
        prop_assert_eq!(classify_surface(&complex), classify_surface(&moved));
        let words: Vec<_> = moved.polygons.iter().map(|p| p.edges.clone()).collect();
        prop_assert_eq!(classify_surface(&moved).orientable, brute_force_orientable(&words, g.edge_count()));
    }

    #[test]
    fn orientability_ignores_lifts(
        (file, flip) in arb_corpus().prop_flat_map(|f| { let ne = f.graph.edge_count(); (Just(f), subset(ne)) })
    ) {
        let conn = file.connection.as_ref().unwrap();
        let mut h = file.graph.clone();
        for &e in &flip {
            h = h.with_negated_weight(e);
        }
        let a = is_orientable(&file.graph, conn).unwrap();
        let b = is_orientable(&h, conn).unwrap();
        prop_assert_eq!(a.orientable, b.orientable);
        prop_assert!(b.verify(&h));
    }

    #[test]
    fn random_theta_graphs_match_the_oracles(
        w in prop::collection::vec(arb_weight(4), 3)
            .prop_filter("pairwise independent", |w| {
                (0..3).all(|i| (i + 1..3).all(|j| w[i].det(w[j]) != 0))
            })
    ) {
        let g = GkmGraph::new(
            None,
            vec!["p".into(), "q".into()],
            w.iter().map(|&weight| Edge { from: 0, to: 1, weight }).collect(),
        ).unwrap();
        for d in 0..4 {
            let q = ht_basis(&g, 2 * d, Ring::Q);
            prop_assert!(same_subspace(&q.rational_rows(), &oracle_q_space(&g, d)));
            let z = ht_basis(&g, 2 * d, Ring::Z);
            prop_assert!(same_lattice(&z.rows, &oracle_z_lattice(&g, d)));
        }
    }
}
