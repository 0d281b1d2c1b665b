//! Synthetic timelike Ricci curvature: model coefficients, the entropic
//! curvature-dimension and measure-contraction conditions, upper bounds and
//! the vacuum Einstein condition.

mod lower;
mod model;
mod report;
mod upper;
mod vacuum;

pub use lower::{default_tmcp_times, tcd_check, tmcp_check, uN_transform_check, TmcpOutcome, TransformAgreement};
pub use model::{c_kappa, s_kappa, sigma};
pub use report::{CurvatureParams, CurvatureReport, Verdict};
pub use upper::{ricci_upper_check, Remainder, UpperBoundParams, WitnessOutcome};
pub use vacuum::{
    minkowski_suite, vacuum_einstein_check, Scenario, ScenarioOutcome, ScenarioSuite, VacuumParams, VacuumReport,
};
