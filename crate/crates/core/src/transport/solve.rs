use serde::{Deserialize, Serialize};

use super::flow::min_cost_flow;
use super::{CausalCoupling, CostMatrix, Relation};
use crate::error::{Error, Result};
use crate::measures::PointMeasure;
use crate::spacetime::LorentzSpace;
use crate::tolerances::{MARGINAL, WEIGHT_SUM};

/// Optimal value of the `l_p` problem together with a maximizing plan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportResult {
    /// `l_p(mu, nu)`, or `-inf` when no causal coupling exists.
    #[serde(with = "crate::document::extended_float")]
    pub value: f64,
    /// `sum c_ij pi_ij = value^p`.
    #[serde(with = "crate::document::extended_float")]
    pub objective: f64,
    pub plan: Option<CausalCoupling>,
    /// `||tau||_{L^2(pi)}` of the returned plan.
    pub tau_l2: f64,
}

impl TransportResult {
    pub fn is_feasible(&self) -> bool {
        self.plan.is_some()
    }
}

fn check_weights(w: &[f64]) -> Result<()> {
    let total: f64 = w.iter().sum();
    if w.is_empty() || w.iter().any(|x| !(x.is_finite() && *x > 0.0)) || (total - 1.0).abs() > WEIGHT_SUM {
        return Err(Error::DegenerateWeights(format!("marginal with total mass {total}")));
    }
    Ok(())
}

/// Whether a coupling of `mu` and `nu` concentrated on `relation` exists,
/// decided by a bipartite maximum flow.
pub fn coupling_exists<S: LorentzSpace>(
    space: &S,
    mu: &PointMeasure<S::Point>,
    nu: &PointMeasure<S::Point>,
    relation: Relation,
) -> bool {
    let cost = CostMatrix::build(space, mu, nu, 1.0).expect("p = 1 is admissible").restricted(relation);
    coupling_exists_for(&cost, mu.weights(), nu.weights())
}

pub fn coupling_exists_for(cost: &CostMatrix, a: &[f64], b: &[f64]) -> bool {
    min_cost_flow(cost, a, b, true).routed >= 1.0 - MARGINAL
}

/// Maximizes `sum c_ij pi_ij` over plans with marginals `a`, `b` supported on
/// the admissible entries of `cost`.
pub fn solve_cost(cost: &CostMatrix, a: &[f64], b: &[f64]) -> Result<TransportResult> {
    check_weights(a)?;
    check_weights(b)?;
    if a.len() != cost.rows || b.len() != cost.cols {
        return Err(Error::DimensionMismatch { expected: cost.rows * cost.cols, got: a.len() * b.len() });
    }
    let flow = min_cost_flow(cost, a, b, false);
    if flow.routed < 1.0 - MARGINAL {
        return Ok(TransportResult { value: f64::NEG_INFINITY, objective: f64::NEG_INFINITY, plan: None, tau_l2: 0.0 });
    }
    let mut plan = CausalCoupling::new(cost.rows, cost.cols, flow.mass, cost)?;
    if !plan.has_marginals(a, b) {
        return Err(Error::SolverFailure("plan marginals drifted beyond tolerance".into()));
    }
    plan.optimal = true;
    let objective = plan.objective(cost).max(0.0);
    Ok(TransportResult { value: objective.powf(1.0 / cost.p), objective, tau_l2: plan.tau_l2(cost), plan: Some(plan) })
}

/// `l_p(mu, nu) = sup { (int tau^p dpi)^{1/p} : pi causal coupling }`.
pub fn solve_lp<S: LorentzSpace>(
    space: &S,
    mu: &PointMeasure<S::Point>,
    nu: &PointMeasure<S::Point>,
    p: f64,
) -> Result<TransportResult> {
    let cost = CostMatrix::build(space, mu, nu, p)?;
    solve_cost(&cost, mu.weights(), nu.weights())
}

/// `l_p` restricted to couplings concentrated on `relation`.
pub fn solve_lp_restricted<S: LorentzSpace>(
    space: &S,
    mu: &PointMeasure<S::Point>,
    nu: &PointMeasure<S::Point>,
    p: f64,
    relation: Relation,
) -> Result<TransportResult> {
    let cost = CostMatrix::build(space, mu, nu, p)?.restricted(relation);
    solve_cost(&cost, mu.weights(), nu.weights())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleCheck {
    /// `l_p(mu0, mu1) + l_p(mu1, mu2)` with `inf - inf = -inf`.
    #[serde(with = "crate::document::extended_float")]
    pub lhs: f64,
    /// `l_p(mu0, mu2)`.
    #[serde(with = "crate::document::extended_float")]
    pub rhs: f64,
    #[serde(with = "crate::document::extended_float")]
    pub margin: f64,
    pub holds: bool,
}

/// Reverse triangle inequality `l_p(mu0,mu1) + l_p(mu1,mu2) <= l_p(mu0,mu2)`.
pub fn reverse_triangle_ellp<S: LorentzSpace>(
    space: &S,
    mu0: &PointMeasure<S::Point>,
    mu1: &PointMeasure<S::Point>,
    mu2: &PointMeasure<S::Point>,
    p: f64,
) -> Result<TriangleCheck> {
    let a = solve_lp(space, mu0, mu1, p)?.value;
    let b = solve_lp(space, mu1, mu2, p)?.value;
    let rhs = solve_lp(space, mu0, mu2, p)?.value;
    let lhs = if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY { f64::NEG_INFINITY } else { a + b };
    let margin = if lhs == f64::NEG_INFINITY { f64::INFINITY } else { rhs - lhs };
    Ok(TriangleCheck { lhs, rhs, margin, holds: margin >= -crate::tolerances::DUALITY_GAP })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::{Event, MinkowskiSpace};
    use approx::assert_abs_diff_eq;

    fn ev(t: f64, x: f64) -> Event {
        Event::from([t, x])
    }

    #[test]
    fn dirac_pairs() {
        let m = MinkowskiSpace::new(1);
        let r = solve_lp(&m, &PointMeasure::dirac(ev(0.0, 0.0)), &PointMeasure::dirac(ev(2.0, 1.0)), 0.5).unwrap();
        assert_abs_diff_eq!(r.value, 3.0f64.sqrt(), epsilon = 1e-12);
        let s = solve_lp(&m, &PointMeasure::dirac(ev(0.0, 0.0)), &PointMeasure::dirac(ev(0.0, 5.0)), 0.5).unwrap();
        assert_eq!(s.value, f64::NEG_INFINITY);
        assert!(s.plan.is_none());
    }

    #[test]
    fn two_by_two_prefers_diagonal() {
        let m = MinkowskiSpace::new(1);
        let mu = PointMeasure::uniform(vec![ev(0.0, 0.0), ev(0.0, 2.0)]).unwrap();
        let nu = PointMeasure::uniform(vec![ev(2.0, 0.0), ev(2.0, 2.0)]).unwrap();
        let r = solve_lp(&m, &mu, &nu, 0.5).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-12);
        let plan = r.plan.unwrap();
        assert_abs_diff_eq!(plan.get(0, 0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(plan.get(1, 1), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn matching_feasibility() {
        let m = MinkowskiSpace::new(1);
        // (0,0) only reaches (1,0.5); (0,3) only reaches (1,3)
        let mu = PointMeasure::uniform(vec![ev(0.0, 0.0), ev(0.0, 3.0)]).unwrap();
        let nu = PointMeasure::uniform(vec![ev(1.0, 0.5), ev(1.0, 3.0)]).unwrap();
        assert!(coupling_exists(&m, &mu, &nu, Relation::Causal));
        let skew = PointMeasure::new(vec![ev(1.0, 0.5), ev(1.0, 3.0)], vec![0.8, 0.2]).unwrap();
        assert!(!coupling_exists(&m, &mu, &skew, Relation::Causal));
        assert!(coupling_exists(
            &m,
            &PointMeasure::dirac(ev(0.0, 0.0)),
            &PointMeasure::dirac(ev(1.0, 1.0)),
            Relation::Causal
        ));
        assert!(!coupling_exists(
            &m,
            &PointMeasure::dirac(ev(0.0, 0.0)),
            &PointMeasure::dirac(ev(1.0, 1.0)),
            Relation::Chronological
        ));
    }

    #[test]
    fn geodesic_triple_is_additive() {
        let m = MinkowskiSpace::new(1);
        let d = |t: f64| PointMeasure::dirac(ev(t, 0.5 * t));
        let c = reverse_triangle_ellp(&m, &d(0.0), &d(1.0), &d(3.0), 0.5).unwrap();
        assert!(c.holds);
        assert_abs_diff_eq!(c.margin, 0.0, epsilon = 1e-12);
        let off = reverse_triangle_ellp(&m, &d(0.0), &PointMeasure::dirac(ev(1.0, 5.0)), &d(3.0), 0.5).unwrap();
        assert_eq!(off.lhs, f64::NEG_INFINITY);
        assert!(off.holds);
    }

    #[test]
    fn rejects_bad_exponent() {
        let m = MinkowskiSpace::new(1);
        let d = PointMeasure::dirac(ev(0.0, 0.0));
        assert!(solve_lp(&m, &d, &d, 0.0).is_err());
        assert!(solve_lp(&m, &d, &d, 1.5).is_err());
    }
}
