use std::hint::black_box;

use causalot_bench::measure;
use causalot_core::transport::{dual_solve, solve_lp};
use causalot_core::MinkowskiSpace;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_solve_lp(c: &mut Criterion) {
    let space = MinkowskiSpace::new(2);
    let mut group = c.benchmark_group("solve_lp");
    for size in [8, 32, 64] {
        let mu = measure(2, size, 0.0, 1);
        let nu = measure(2, size, 3.0, 2);
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| solve_lp(&space, black_box(&mu), black_box(&nu), 0.5).unwrap())
        });
    }
    group.finish();
}

fn bench_dual_solve(c: &mut Criterion) {
    let space = MinkowskiSpace::new(2);
    let mu = measure(2, 32, 0.0, 3);
    let nu = measure(2, 32, 3.0, 4);
    c.bench_function("dual_solve/32", |b| b.iter(|| dual_solve(&space, black_box(&mu), black_box(&nu), 0.5).unwrap()));
}

criterion_group!(benches, bench_solve_lp, bench_dual_solve);
criterion_main!(benches);
