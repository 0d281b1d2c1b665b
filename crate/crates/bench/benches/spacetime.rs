use std::hint::black_box;

use causalot_bench::{dag, events};
use causalot_core::spacetime::validate_prelength;
use causalot_core::MinkowskiSpace;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_validate_minkowski(c: &mut Criterion) {
    let space = MinkowskiSpace::new(2);
    let mut group = c.benchmark_group("validate_prelength/minkowski");
    for size in [50, 100, 200] {
        let sample = events(2, size, 0.0, 5);
        group.bench_with_input(BenchmarkId::from_parameter(size), &sample, |b, sample| {
            b.iter(|| validate_prelength(&space, black_box(sample)))
        });
    }
    group.finish();
}

fn bench_validate_dag(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate_prelength/dag");
    for size in [50, 100] {
        let space = dag(size, 0.1, 6);
        let nodes: Vec<usize> = (0..size).collect();
        group.bench_with_input(BenchmarkId::from_parameter(size), &nodes, |b, nodes| {
            b.iter(|| validate_prelength(&space, black_box(nodes)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_validate_minkowski, bench_validate_dag);
criterion_main!(benches);
