use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{
    default_tmcp_times, ricci_upper_check, tcd_check, tmcp_check, CurvatureParams, CurvatureReport, Remainder,
    UpperBoundParams, Verdict,
};
use crate::error::Result;
use crate::geodesics::{geodesic_entropy_curve, AffineFlow, Rebinning};
use crate::measures::{Grid, GridMeasure};
use crate::spacetime::{BoxRegion, Event, MinkowskiSpace};

/// One test case of a vacuum suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum Scenario {
    /// Lower bound via contraction of `mu0` to the Dirac mass at `target`.
    Contraction { mu0: GridMeasure, target: Event },
    /// Lower bound along an affine flow of `mu0` on `[0, 1]`.
    Flow { mu0: GridMeasure, flow: AffineFlow, samples: usize },
    /// Upper bound probe at `(x, y)`.
    Upper { x: Event, y: Event, mu0: GridMeasure },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSuite {
    pub scenarios: Vec<(String, Scenario)>,
}

/// Parameters of the synthetic vacuum Einstein condition `Ric = Lambda`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VacuumParams {
    pub lambda: f64,
    #[serde(with = "crate::document::extended_float")]
    pub n: f64,
    pub p: f64,
    pub tol: f64,
    pub r0: f64,
    pub omega: Remainder,
}

impl VacuumParams {
    pub fn new(lambda: f64, n: f64, p: f64) -> Self {
        VacuumParams { lambda, n, p, tol: 1e-9, r0: 1.0, omega: Remainder::RebinningBudget }
    }

    pub fn with_omega(mut self, omega: Remainder) -> Self {
        self.omega = omega;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub name: String,
    /// `lower` or `upper`.
    pub side: String,
    pub report: CurvatureReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VacuumReport {
    pub verdict: Verdict,
    pub lower: Verdict,
    pub upper: Verdict,
    pub scenarios: Vec<ScenarioOutcome>,
    pub params: VacuumParams,
}

/// Shipped Minkowski suite: a contraction toward a Dirac mass, a timelike
/// translation, and two upper-bound probes.
pub fn minkowski_suite(space: &MinkowskiSpace, resolution: usize) -> Result<ScenarioSuite> {
    let n = space.dim();
    let unit = BoxRegion::new(vec![-0.5; n], vec![0.5; n])?;
    let square = GridMeasure::uniform(Grid::square(unit, resolution)?)?;
    let mut target = vec![0.0; n];
    target[0] = 3.0;
    let mut velocity = vec![0.0; n];
    velocity[0] = 2.0;
    velocity[1] = 0.5;

    let probe = |r: f64, spatial: f64| -> Result<(Event, Event, GridMeasure)> {
        let h = 0.9 * r.powi(4) / (n as f64).sqrt();
        let small = GridMeasure::uniform(Grid::square(BoxRegion::new(vec![-h; n], vec![h; n])?, resolution.min(32))?)?;
        let mut y = vec![0.0; n];
        y[0] = (r * r - spatial * spatial).sqrt();
        y[1] = spatial;
        Ok((Event::from(vec![0.0; n]), Event::from(y), small))
    };
    let (x1, y1, m1) = probe(0.5, 0.0)?;
    let (x2, y2, m2) = probe(0.3, 0.02)?;
    Ok(ScenarioSuite {
        scenarios: vec![
            ("contraction".into(), Scenario::Contraction { mu0: square.clone(), target: Event::from(target) }),
            (
                "translation".into(),
                Scenario::Flow { mu0: square, flow: AffineFlow::translation(velocity), samples: 17 },
            ),
            ("upper-r0.5".into(), Scenario::Upper { x: x1, y: y1, mu0: m1 }),
            ("upper-r0.3".into(), Scenario::Upper { x: x2, y: y2, mu0: m2 }),
        ],
    })
}

/// Lower bound `TCD(Lambda, N)` and upper bound `Lambda` over every scenario.
pub fn vacuum_einstein_check(
    space: &MinkowskiSpace,
    suite: &ScenarioSuite,
    params: &VacuumParams,
) -> Result<VacuumReport> {
    let lower_params = CurvatureParams::new(params.p, params.lambda, params.n)?.with_tol(params.tol)?;
    let upper_params = UpperBoundParams {
        tol: params.tol,
        ..UpperBoundParams::new(params.lambda, params.r0).with_omega(params.omega.clone())
    };
    let scenarios: Vec<ScenarioOutcome> = suite
        .scenarios
        .par_iter()
        .map(|(name, sc)| -> Result<ScenarioOutcome> {
            let (side, report) = match sc {
                Scenario::Contraction { mu0, target } => {
                    ("lower", tmcp_check(space, mu0, target, &lower_params, &default_tmcp_times())?.report)
                }
                Scenario::Flow { mu0, flow, samples } => {
                    let times: Vec<f64> = (0..=*samples).map(|k| k as f64 / *samples as f64).collect();
                    let curve = geodesic_entropy_curve(space, mu0, flow, &times, &Rebinning::Adapted)?;
                    ("lower", tcd_check(&curve, &lower_params)?)
                }
                Scenario::Upper { x, y, mu0 } => {
                    ("upper", ricci_upper_check(space, x, y, mu0, &upper_params, params.p)?.0)
                }
            };
            Ok(ScenarioOutcome { name: name.clone(), side: side.into(), report })
        })
        .collect::<Result<_>>()?;
    let fold = |side: &str| {
        scenarios.iter().filter(|s| s.side == side).fold(Verdict::Pass, |acc, s| acc.and(s.report.verdict))
    };
    let (lower, upper) = (fold("lower"), fold("upper"));
    Ok(VacuumReport { verdict: lower.and(upper), lower, upper, scenarios, params: params.clone() })
}

impl VacuumReport {
    pub fn summary(&self) -> serde_json::Value {
        json!({
            "verdict": self.verdict,
            "lower": self.lower,
            "upper": self.upper,
            "margins": self.scenarios.iter().map(|s| json!({"name": s.name, "side": s.side, "verdict": s.report.verdict})).collect::<Vec<_>>(),
        })
    }
}
