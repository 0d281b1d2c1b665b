//! Causal couplings, the `l_p` maximization, Kantorovich duality and
//! dualisability classification for finitely supported measures.
//!
//! Non-causal pairs are excluded from the network entirely rather than being
//! given a large negative cost.

mod classify;
mod cost;
mod dual;
mod flow;
mod solve;

pub use classify::{classify_dualisability, Dualisability, DualisabilityReport, StrongCriterion};
pub use cost::{CausalCoupling, CostMatrix, Relation};
pub use dual::{
    cyclical_monotonicity_check, dual_solve, dual_solve_cost, ellp_transform, potentials_for_plan, subdifferential,
    DualPotentials, MonotonicityReport,
};
pub use solve::{
    coupling_exists, coupling_exists_for, reverse_triangle_ellp, solve_cost, solve_lp, solve_lp_restricted,
    TransportResult, TriangleCheck,
};
