use std::hint::black_box;

use causalot_bench::{achronal_sets, events};
use causalot_core::localization::tau_v;
use causalot_core::MinkowskiSpace;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_tau_v(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau_v");
    for n in [1, 2] {
        let space = MinkowskiSpace::new(n);
        let probes = events(n, 64, 1.5, 7);
        for (name, set) in achronal_sets(n) {
            group.bench_with_input(BenchmarkId::new(name, format!("{n}+1")), &probes, |b, probes| {
                b.iter(|| {
                    for x in probes {
                        black_box(tau_v(&space, &set, x).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_tau_v);
criterion_main!(benches);
