//! Independent oracles and instance generators shared by integration tests.
#![allow(dead_code)]

use causalot_core::measures::PointMeasure;
use causalot_core::{CostMatrix, Event};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Maximum of `sum c_ij pi_ij` over the vertices of the transport polytope
/// restricted to admissible arcs, found by enumerating arc forests.
/// Returns `None` when the restricted polytope is empty.
pub fn vertex_enumeration_max(cost: &CostMatrix, a: &[f64], b: &[f64]) -> Option<f64> {
    let (r, c) = (cost.rows, cost.cols);
    let arcs: Vec<(usize, usize, f64)> = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .filter_map(|(i, j)| cost.get(i, j).map(|v| (i, j, v)))
        .collect();
    let max_arcs = r + c - 1;
    let mut best: Option<f64> = None;
    for mask in 1u32..(1u32 << arcs.len()) {
        if mask.count_ones() as usize > max_arcs {
            continue;
        }
        let chosen: Vec<usize> = (0..arcs.len()).filter(|k| mask >> k & 1 == 1).collect();
        if !is_forest(&chosen, &arcs, r, c) {
            continue;
        }
        if let Some(flow) = solve_forest(&chosen, &arcs, a, b) {
            let value: f64 = chosen.iter().zip(&flow).map(|(&k, f)| arcs[k].2 * f).sum();
            best = Some(best.map_or(value, |x: f64| x.max(value)));
        }
    }
    best
}

fn is_forest(chosen: &[usize], arcs: &[(usize, usize, f64)], r: usize, c: usize) -> bool {
    let mut parent: Vec<usize> = (0..r + c).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &k in chosen {
        let (i, j, _) = arcs[k];
        let (x, y) = (find(&mut parent, i), find(&mut parent, r + j));
        if x == y {
            return false;
        }
        parent[x] = y;
    }
    true
}

/// Unique flow on a forest meeting the marginals, if it is non-negative.
fn solve_forest(chosen: &[usize], arcs: &[(usize, usize, f64)], a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let r = a.len();
    let mut residual: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    let mut flow = vec![f64::NAN; chosen.len()];
    let mut open = chosen.len();
    while open > 0 {
        let mut progressed = false;
        for node in 0..residual.len() {
            let incident: Vec<usize> = (0..chosen.len())
                .filter(|&q| flow[q].is_nan())
                .filter(|&q| {
                    let (i, j, _) = arcs[chosen[q]];
                    i == node || r + j == node
                })
                .collect();
            if incident.len() == 1 {
                let q = incident[0];
                let (i, j, _) = arcs[chosen[q]];
                let f = residual[node];
                flow[q] = f;
                residual[i] -= f;
                residual[r + j] -= f;
                open -= 1;
                progressed = true;
            }
        }
        if !progressed {
            return None;
        }
    }
    if flow.iter().any(|f| *f < -1e-12) || residual.iter().any(|x| x.abs() > 1e-10) {
        return None;
    }
    Some(flow)
}

/// Random probability weights bounded away from zero.
pub fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| 0.1 + rng.random::<f64>()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Random atoms in the slab `t in [t0, t1]`, `|x| <= half_width` of `R^{1,1}`.
pub fn random_events(rng: &mut ChaCha8Rng, k: usize, t0: f64, t1: f64, half_width: f64) -> Vec<Event> {
    (0..k)
        .map(|_| Event::from([t0 + (t1 - t0) * rng.random::<f64>(), half_width * (2.0 * rng.random::<f64>() - 1.0)]))
        .collect()
}

pub fn random_measure(rng: &mut ChaCha8Rng, k: usize, t0: f64, t1: f64, half_width: f64) -> PointMeasure<Event> {
    let support = random_events(rng, k, t0, t1, half_width);
    let w = random_weights(rng, k);
    PointMeasure::new(support, w).expect("random support points are distinct")
}
