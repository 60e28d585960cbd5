use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gkm_core::cohomology::{betti_numbers, ht_basis, z_freeness, Ring};
use gkm_core::connection::ConnectionSpace;
use gkm_core::format::{parse_graph_file, GraphFile};
use gkm_core::orientation::is_orientable;
use gkm_core::verdict::{realizability_report_with, ReportOptions};

const CORPUS: [(&str, &str); 4] = [
    ("cube", include_str!("../../../corpus/cube.json")),
    ("flag", include_str!("../../../corpus/flag.json")),
    ("nonorientable", include_str!("../../../corpus/nonorientable.json")),
    ("theta", include_str!("../../../corpus/theta.json")),
];

fn graphs() -> Vec<(&'static str, GraphFile)> {
    CORPUS
        .iter()
        .map(|&(name, text)| (name, parse_graph_file(text).expect("corpus graph")))
        .collect()
}

fn verdict(c: &mut Criterion) {
    let mut group = c.benchmark_group("verdict");
    for (name, file) in graphs() {
        group.bench_function(name, |b| {
            b.iter(|| {
                realizability_report_with(
                    black_box(&file.graph),
                    file.connection.as_ref(),
                    ReportOptions::default(),
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology");
    for (name, file) in graphs() {
        let g = &file.graph;
        group.bench_function(format!("{name}/betti"), |b| b.iter(|| betti_numbers(black_box(g), 20)));
        group.bench_function(format!("{name}/h6-z"), |b| b.iter(|| ht_basis(black_box(g), 6, Ring::Z)));
        group.bench_function(format!("{name}/freeness"), |b| b.iter(|| z_freeness(black_box(g), 20).unwrap()));
    }
    group.finish();
}

fn connections(c: &mut Criterion) {
    let (_, flag) = graphs().into_iter().find(|(n, _)| *n == "flag").unwrap();
    let g = flag.graph;
    c.bench_function("connections/flag-orientability-sweep", |b| {
        b.iter(|| {
            ConnectionSpace::new(&g)
                .iter()
                .filter(|conn| is_orientable(&g, conn).unwrap().orientable)
                .count()
        })
    });
}

criterion_group!(benches, verdict, cohomology, connections);
criterion_main!(benches);
