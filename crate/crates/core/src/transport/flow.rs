//! Successive shortest paths on the bipartite transport network.
//!
//! Nodes are the source, the rows, the columns and the sink. Row-to-column
//! arcs exist only for admissible pairs and have unbounded capacity; their
//! cost is `-c_ij`, so a minimum-cost maximum flow is a maximizing plan.

use crate::tolerances::FLOW_EPS;

use super::CostMatrix;

pub(crate) struct FlowOutcome {
    /// Dense `rows x cols` plan.
    pub mass: Vec<f64>,
    /// Total mass routed.
    pub routed: f64,
}

/// Maximum flow of minimum cost from `a` to `b` over the admissible arcs of
/// `cost`. With `ignore_costs` every admissible arc costs zero, which turns
/// the routine into a plain maximum-flow computation.
pub(crate) fn min_cost_flow(cost: &CostMatrix, a: &[f64], b: &[f64], ignore_costs: bool) -> FlowOutcome {
    let (r, c) = (cost.rows, cost.cols);
    let arc = |i: usize, j: usize| -> Option<f64> { cost.get(i, j).map(|v| if ignore_costs { 0.0 } else { -v }) };
    let mut mass = vec![0.0; r * c];
    let mut supply: Vec<f64> = a.to_vec();
    let mut demand: Vec<f64> = b.to_vec();

    // Node layout: rows 0..r, columns r..r+c, sink r+c. The source is implicit:
    // every row with remaining supply starts at its potential-reduced distance 0.
    let n = r + c + 1;
    let sink = r + c;
    let mut pot = vec![0.0; n];
    for j in 0..c {
        pot[r + j] = (0..r).filter_map(|i| arc(i, j)).fold(f64::INFINITY, f64::min);
        if !pot[r + j].is_finite() {
            pot[r + j] = 0.0;
        }
    }
    pot[sink] = (0..c).map(|j| pot[r + j]).fold(f64::INFINITY, f64::min).min(0.0);

    let mut routed = 0.0;
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    loop {
        if supply.iter().all(|s| *s <= FLOW_EPS) || demand.iter().all(|d| *d <= FLOW_EPS) {
            break;
        }
        dist.fill(f64::INFINITY);
        prev.fill(usize::MAX);
        done.fill(false);
        for i in 0..r {
            if supply[i] > FLOW_EPS {
                dist[i] = -pot[i];
            }
        }
        // Re-base so that the implicit source has potential 0.
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for v in 0..n {
                if !done[v] && dist[v] < best {
                    best = dist[v];
                    u = v;
                }
            }
            if u == usize::MAX || u == sink {
                break;
            }
            done[u] = true;
            let du = dist[u];
            if u < r {
                for j in 0..c {
                    if let Some(w) = arc(u, j) {
                        let v = r + j;
                        let nd = du + (w + pot[u] - pot[v]).max(0.0);
                        if nd < dist[v] {
                            dist[v] = nd;
                            prev[v] = u;
                        }
                    }
                }
            } else {
                let j = u - r;
                for i in 0..r {
                    if mass[i * c + j] > FLOW_EPS {
                        let w = arc(i, j).expect("flow only on admissible arcs");
                        let nd = du + (-w + pot[u] - pot[i]).max(0.0);
                        if nd < dist[i] {
                            dist[i] = nd;
                            prev[i] = u;
                        }
                    }
                }
                if demand[j] > FLOW_EPS {
                    let nd = du + (pot[u] - pot[sink]).max(0.0);
                    if nd < dist[sink] {
                        dist[sink] = nd;
                        prev[sink] = u;
                    }
                }
            }
        }
        if !dist[sink].is_finite() {
            break;
        }
        let dt = dist[sink];
        for v in 0..n {
            pot[v] += dist[v].min(dt);
        }

        // Walk back from the sink to the starting row, collecting the bottleneck.
        let mut path = vec![sink];
        let mut v = sink;
        while prev[v] != usize::MAX {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        let start = path[0];
        let mut delta = supply[start];
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            if v == sink {
                delta = delta.min(demand[u - r]);
            } else if u >= r {
                delta = delta.min(mass[v * c + (u - r)]);
            }
        }
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            if v == sink {
                demand[u - r] -= delta;
            } else if u < r {
                mass[u * c + (v - r)] += delta;
            } else {
                let cell = &mut mass[v * c + (u - r)];
                *cell -= delta;
                if *cell <= FLOW_EPS {
                    *cell = 0.0;
                }
            }
        }
        supply[start] -= delta;
        routed += delta;
    }
    FlowOutcome { mass, routed }
}
