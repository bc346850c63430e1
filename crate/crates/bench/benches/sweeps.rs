use criterion::{black_box, criterion_group, criterion_main, Criterion};

use contextlab_core::coloring::{chromatic_number, DEFAULT_VERTEX_CAP};
use contextlab_core::enumeration::{
    additive_histogram, enumerate_two_valued_states, product_sum_histogram, SweepOptions,
};
use contextlab_core::quantum::quantum_product_prediction;
use contextlab_core::{ContextHypergraph, EigenvalueScheme};

fn ceg() -> ContextHypergraph {
    ContextHypergraph::preset("ceg18").unwrap()
}

fn sweeps(c: &mut Criterion) {
    let h = ceg();
    let mut group = c.benchmark_group("ceg18 sweep");
    group.sample_size(10);
    for jobs in [1, 4] {
        group.bench_function(format!("products jobs={jobs}"), |b| {
            b.iter(|| product_sum_histogram(black_box(&h), SweepOptions { jobs, ..Default::default() }).unwrap())
        });
    }
    group.bench_function("additive jobs=1", |b| {
        b.iter(|| additive_histogram(black_box(&h), SweepOptions::default()).unwrap())
    });
    group.finish();
}

fn searches(c: &mut Criterion) {
    let h = ceg();
    c.bench_function("two-valued states ceg18", |b| b.iter(|| enumerate_two_valued_states(black_box(&h))));
    c.bench_function("chromatic number ceg18", |b| {
        b.iter(|| chromatic_number(black_box(&h.adjacency_graph()), DEFAULT_VERTEX_CAP).unwrap())
    });
    c.bench_function("householder prediction ceg18", |b| {
        b.iter(|| quantum_product_prediction(black_box(&h), &EigenvalueScheme::Householder).unwrap())
    });
}

criterion_group!(benches, sweeps, searches);
criterion_main!(benches);
