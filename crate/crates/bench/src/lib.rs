//! Seeded inputs shared by the benchmarks.
use causalot_core::localization::AchronalSet;
use causalot_core::rng::stream;
use causalot_core::spacetime::{CausalDagSpace, DagEdge};
use causalot_core::{Event, PointMeasure};
use rand::Rng;

/// Uniform events in the box `[t0, t0 + 1] x [-1, 1]^n`.
pub fn events(n: usize, count: usize, t0: f64, seed: u64) -> Vec<Event> {
    let mut rng = stream(seed, 0);
    (0..count)
        .map(|_| {
            let mut c = vec![t0 + rng.random::<f64>()];
            c.extend((0..n).map(|_| rng.random_range(-1.0..1.0)));
            Event::from(c)
        })
        .collect()
}

/// A measure on `count` events with random positive weights.
pub fn measure(n: usize, count: usize, t0: f64, seed: u64) -> PointMeasure<Event> {
    let mut rng = stream(seed, 1);
    let support = events(n, count, t0, seed);
    let weights: Vec<f64> = (0..count).map(|_| 0.5 + rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    PointMeasure::new(support, weights.into_iter().map(|w| w / total).collect()).unwrap()
}

/// A random DAG on `n` nodes where each forward pair is an edge with probability `density`.
pub fn dag(n: usize, density: f64, seed: u64) -> CausalDagSpace {
    let mut rng = stream(seed, 2);
    let mut edges = Vec::new();
    for from in 0..n {
        for to in from + 1..n {
            if rng.random::<f64>() < density {
                edges.push(DagEdge { from, to, weight: rng.random_range(0.1..1.0) });
            }
        }
    }
    CausalDagSpace::new(n, edges).unwrap()
}

/// The unit hyperboloid about the origin and the cone of slope `-1/2`.
pub fn achronal_sets(n: usize) -> Vec<(&'static str, AchronalSet)> {
    let origin = Event::from(vec![0.0; n + 1]);
    vec![
        ("flat", AchronalSet::flat(0.0)),
        ("cone", AchronalSet::cone(origin.clone(), -0.5).unwrap()),
        ("hyperboloid", AchronalSet::hyperboloid(origin, 1.0).unwrap()),
    ]
}
