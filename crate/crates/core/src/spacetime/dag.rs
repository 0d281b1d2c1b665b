use std::collections::VecDeque;

use petgraph::algo::toposort;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::LorentzSpace;
use crate::error::{invalid, Error, Result};

/// Directed edge carrying a non-negative `tau` weight. Strictly positive
/// weights mark timelike edges.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DagEdge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

/// Auxiliary metric of a DAG space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type", content = "matrix")]
pub enum DagMetric {
    /// Hop count in the underlying undirected graph; disconnected pairs sit at
    /// distance equal to the node count.
    Hop,
    /// User-supplied symmetric distance matrix.
    Custom(Vec<Vec<f64>>),
}

/// Weighted causal DAG: `x <= y` iff `y` is reachable from `x`, and `tau` is
/// the longest-path weight.
#[derive(Clone, Debug)]
pub struct CausalDagSpace {
    n: usize,
    edges: Vec<DagEdge>,
    metric: DagMetric,
    // row-major n x n; NEG_INFINITY marks unreachable pairs
    longest: Vec<f64>,
    hops: Vec<f64>,
}

impl CausalDagSpace {
    pub fn new(n: usize, edges: Vec<DagEdge>) -> Result<Self> {
        Self::with_metric(n, edges, DagMetric::Hop)
    }

    pub fn with_metric(n: usize, edges: Vec<DagEdge>, metric: DagMetric) -> Result<Self> {
        for e in &edges {
            for node in [e.from, e.to] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, len: n });
                }
            }
            if !(e.weight >= 0.0 && e.weight.is_finite()) {
                return Err(invalid("edge weight", format!("{} on {}->{}", e.weight, e.from, e.to)));
            }
        }
        if let DagMetric::Custom(m) = &metric {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(invalid("distances", "custom metric must be n x n"));
            }
        }

        let mut g = DiGraph::<(), f64, u32>::with_capacity(n, edges.len());
        let ids: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for e in &edges {
            g.add_edge(ids[e.from], ids[e.to], e.weight);
        }
        let order = toposort(&g, None).map_err(|c| Error::CycleDetected(c.node_id().index()))?;
        let order: Vec<usize> = order.into_iter().map(|i| i.index()).collect();

        let mut out: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for e in &edges {
            out[e.from].push((e.to, e.weight));
        }
        let mut rank = vec![0usize; n];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }

        let mut longest = vec![f64::NEG_INFINITY; n * n];
        for s in 0..n {
            let row = &mut longest[s * n..(s + 1) * n];
            row[s] = 0.0;
            for &u in &order[rank[s]..] {
                let du = row[u];
                if du == f64::NEG_INFINITY {
                    continue;
                }
                for &(v, w) in &out[u] {
                    if du + w > row[v] {
                        row[v] = du + w;
                    }
                }
            }
        }

        let hops = hop_distances(n, &edges);
        Ok(CausalDagSpace { n, edges, metric, longest, hops })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[DagEdge] {
        &self.edges
    }

    pub fn metric(&self) -> &DagMetric {
        &self.metric
    }

    /// Longest-path `tau` together with the reachability flag.
    pub fn dag_tau(&self, x: usize, y: usize) -> Result<(f64, bool)> {
        for node in [x, y] {
            if node >= self.n {
                return Err(Error::NodeOutOfRange { node, len: self.n });
            }
        }
        let v = self.longest[x * self.n + y];
        Ok(if v == f64::NEG_INFINITY { (0.0, false) } else { (v, true) })
    }
}

fn hop_distances(n: usize, edges: &[DagEdge]) -> Vec<f64> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        adj[e.from].push(e.to);
        adj[e.to].push(e.from);
    }
    let mut d = vec![n as f64; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0.0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == n as f64 && v != s {
                    row[v] = row[u] + 1.0;
                    queue.push_back(v);
                }
            }
        }
    }
    d
}

impl LorentzSpace for CausalDagSpace {
    type Point = usize;

    fn distance(&self, x: &usize, y: &usize) -> f64 {
        match &self.metric {
            DagMetric::Hop => self.hops[x * self.n + y],
            DagMetric::Custom(m) => m[*x][*y],
        }
    }

    fn causal(&self, x: &usize, y: &usize) -> bool {
        self.longest[x * self.n + y] != f64::NEG_INFINITY
    }

    fn tau(&self, x: &usize, y: &usize) -> f64 {
        self.longest[x * self.n + y].max(0.0)
    }
}
