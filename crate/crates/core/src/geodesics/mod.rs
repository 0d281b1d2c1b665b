//! `l_p`-geodesics of measures: atomic dynamical plans, the evaluation and
//! restriction operators, and entropy along affine displacement flows.

mod entropy_curve;
mod plan;

pub use entropy_curve::{
    flow_plan, flow_tau_l2, geodesic_entropy_curve, push_forward, AffineFlow, EntropyCurve, Rebinning,
};
pub use plan::{lift_plan, DynamicalPlan, GeodesicCurve};
