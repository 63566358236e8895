//! Measurements of the toolkit's hot paths: enumeration, invariant
//! profiles, exhaustive search, canonical codes and the graph6 codec.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dit_cli::codec::{decode_graph6, encode_graph6};
use dit_core::canon::canonical_code;
use dit_core::engine::{parse_expr, search_extremal, Direction};
use dit_core::enumerate::{connected_graphs, free_trees, GraphClass};
use dit_core::invariants::invariant_profile;

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate/free_trees/12", |b| {
        b.iter(|| free_trees(black_box(12)).unwrap())
    });
    c.bench_function("enumerate/connected_graphs/7", |b| {
        b.iter(|| connected_graphs(black_box(7)).unwrap())
    });
}

fn bench_profiles(c: &mut Criterion) {
    let trees = free_trees(10).unwrap();
    c.bench_function("profiles/trees/10", |b| {
        b.iter(|| {
            for g in &trees {
                black_box(invariant_profile(g).unwrap());
            }
        })
    });
    let graphs = connected_graphs(7).unwrap();
    c.bench_function("profiles/connected/7", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(invariant_profile(g).unwrap());
            }
        })
    });
}

fn bench_search(c: &mut Criterion) {
    let distance_gap = parse_expr("avg_distance - proximity").unwrap();
    c.bench_function("search/trees/11/max distance gap", |b| {
        b.iter(|| {
            search_extremal(GraphClass::Tree, black_box(11), &distance_gap, Direction::Max)
                .unwrap()
        })
    });
    let rho_gap = parse_expr("remoteness - radius").unwrap();
    c.bench_function("search/connected/7/min remoteness gap", |b| {
        b.iter(|| {
            search_extremal(GraphClass::Connected, black_box(7), &rho_gap, Direction::Min)
                .unwrap()
        })
    });
}

fn bench_canon(c: &mut Criterion) {
    let graphs = connected_graphs(6).unwrap();
    c.bench_function("canon/connected/6", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(canonical_code(g).unwrap());
            }
        })
    });
}

fn bench_codec(c: &mut Criterion) {
    let graphs = connected_graphs(6).unwrap();
    c.bench_function("codec/graph6 encode/connected 6", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(encode_graph6(g).unwrap());
            }
        })
    });
    let encoded: Vec<String> = graphs.iter().map(|g| encode_graph6(g).unwrap()).collect();
    c.bench_function("codec/graph6 decode/connected 6", |b| {
        b.iter(|| {
            for s in &encoded {
                black_box(decode_graph6(s).unwrap());
            }
        })
    });
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_profiles,
    bench_search,
    bench_canon,
    bench_codec
);
criterion_main!(benches);
