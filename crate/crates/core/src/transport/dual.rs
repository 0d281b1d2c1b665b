use serde::{Deserialize, Serialize};

use super::{solve_cost, CausalCoupling, CostMatrix};
use crate::error::{Error, Result};
use crate::measures::PointMeasure;
use crate::spacetime::LorentzSpace;
use crate::tolerances::{GAP_ROUNDING_FLOOR, SUBDIFFERENTIAL};

/// Kantorovich potentials with `u_i + v_j >= c_ij` on admissible pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPotentials {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// `sum u_i a_i + sum v_j b_j`.
    pub dual: f64,
    /// `sum c_ij pi_ij` of the optimal plan.
    pub primal: f64,
    /// `dual - primal`.
    pub gap: f64,
}

impl DualPotentials {
    /// Largest violation of `u_i + v_j >= c_ij`; non-positive when feasible.
    pub fn max_infeasibility(&self, cost: &CostMatrix) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..cost.rows {
            for j in 0..cost.cols {
                if let Some(c) = cost.get(i, j) {
                    worst = worst.max(c - self.u[i] - self.v[j]);
                }
            }
        }
        worst
    }
}

/// Optimal dual potentials for the cost problem, certified by complementary
/// slackness against the optimal plan.
pub fn dual_solve_cost(cost: &CostMatrix, a: &[f64], b: &[f64]) -> Result<DualPotentials> {
    let result = solve_cost(cost, a, b)?;
    let plan = result.plan.ok_or(Error::NoCausalCoupling)?;
    potentials_for_plan(cost, &plan, a, b)
}

pub fn dual_solve<S: LorentzSpace>(
    space: &S,
    mu: &PointMeasure<S::Point>,
    nu: &PointMeasure<S::Point>,
    p: f64,
) -> Result<DualPotentials> {
    let cost = CostMatrix::build(space, mu, nu, p)?;
    dual_solve_cost(&cost, mu.weights(), nu.weights())
}

/// Longest-path potentials: with `s_i = -u_i` and `v_j`, the constraints
/// `v_j >= s_i + c_ij` on admissible pairs and `s_i >= v_j - c_ij` on the plan
/// support form a difference system solved by Bellman-Ford.
pub fn potentials_for_plan(cost: &CostMatrix, plan: &CausalCoupling, a: &[f64], b: &[f64]) -> Result<DualPotentials> {
    let (r, c) = (cost.rows, cost.cols);
    let support = plan.support();
    let mut s = vec![0.0; r];
    let mut v = vec![0.0; c];
    let tol = 1e-13;
    let mut converged = false;
    for _ in 0..(r + c + 1) {
        let mut changed = false;
        for i in 0..r {
            for j in 0..c {
                if let Some(cij) = cost.get(i, j) {
                    let cand = s[i] + cij;
                    if cand > v[j] + tol {
                        v[j] = cand;
                        changed = true;
                    }
                }
            }
        }
        for &(i, j, _) in &support {
            let cij = cost.get(i, j).ok_or(Error::SolverFailure("plan charges a forbidden pair".into()))?;
            let cand = v[j] - cij;
            if cand > s[i] + tol {
                s[i] = cand;
                changed = true;
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SolverFailure("positive cycle: plan is not optimal".into()));
    }
    let u: Vec<f64> = s.iter().map(|x| -x).collect();
    let dual: f64 = u.iter().zip(a).map(|(x, w)| x * w).sum::<f64>() + v.iter().zip(b).map(|(x, w)| x * w).sum::<f64>();
    let primal = plan.objective(cost);
    let mut gap = dual - primal;
    if (-GAP_ROUNDING_FLOOR..0.0).contains(&gap) {
        gap = 0.0;
    }
    Ok(DualPotentials { u, v, dual, primal, gap })
}

/// `phi^(l_p)(y_j) = max_i phi_i + c_ij`, `-inf` when no `x_i <= y_j`.
pub fn ellp_transform(phi: &[f64], cost: &CostMatrix) -> Vec<f64> {
    (0..cost.cols)
        .map(|j| (0..cost.rows).filter_map(|i| cost.get(i, j).map(|c| phi[i] + c)).fold(f64::NEG_INFINITY, f64::max))
        .collect()
}

/// Pairs with `phi^(l_p)(y_j) - phi(x_i) = c_ij` within tolerance.
pub fn subdifferential(phi: &[f64], phi_transform: &[f64], cost: &CostMatrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..cost.rows {
        for j in 0..cost.cols {
            if let Some(c) = cost.get(i, j) {
                if phi_transform[j].is_finite() && (phi_transform[j] - phi[i] - c).abs() <= SUBDIFFERENTIAL {
                    out.push((i, j));
                }
            }
        }
    }
    out
}

/// Result of the brute-force cyclic reassignment scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub holds: bool,
    /// Largest cost increase found by a cyclic shift (non-positive when monotone).
    pub worst_gain: f64,
    /// Support pairs of the worst cycle.
    pub witness: Vec<(usize, usize)>,
}

/// Checks that no cyclic shift of `m <= k` support pairs raises the total cost.
/// Forbidden reassignments count as `-inf`.
pub fn cyclical_monotonicity_check(plan: &CausalCoupling, cost: &CostMatrix, k: usize) -> MonotonicityReport {
    let pairs: Vec<(usize, usize)> = plan.support().iter().map(|&(i, j, _)| (i, j)).collect();
    let mut worst = f64::NEG_INFINITY;
    let mut witness = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    let mut used = vec![false; pairs.len()];
    for m in 2..=k.min(pairs.len()) {
        scan(&pairs, cost, m, &mut chosen, &mut used, &mut worst, &mut witness);
    }
    let holds = worst <= SUBDIFFERENTIAL;
    MonotonicityReport { holds, worst_gain: if worst == f64::NEG_INFINITY { 0.0 } else { worst }, witness }
}

fn scan(
    pairs: &[(usize, usize)],
    cost: &CostMatrix,
    m: usize,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    worst: &mut f64,
    witness: &mut Vec<(usize, usize)>,
) {
    if chosen.len() == m {
        let mut before = 0.0;
        let mut after = 0.0;
        for (idx, &a) in chosen.iter().enumerate() {
            let (xi, yi) = pairs[a];
            let (_, ynext) = pairs[chosen[(idx + 1) % m]];
            before += cost.get(xi, yi).unwrap_or(f64::NEG_INFINITY);
            match cost.get(xi, ynext) {
                Some(c) => after += c,
                None => return,
            }
        }
        let gain = after - before;
        if gain > *worst {
            *worst = gain;
            *witness = chosen.iter().map(|&a| pairs[a]).collect();
        }
        return;
    }
    // Fixing the smallest index first enumerates every cycle once per rotation class.
    let start = if chosen.is_empty() { 0 } else { chosen[0] + 1 };
    for a in start..pairs.len() {
        if used[a] {
            continue;
        }
        used[a] = true;
        chosen.push(a);
        scan(pairs, cost, m, chosen, used, worst, witness);
        chosen.pop();
        used[a] = false;
    }
}
