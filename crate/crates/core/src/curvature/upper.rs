use serde::{Deserialize, Serialize};
use serde_json::json;

use super::lower::support_bbox;
use super::{CurvatureReport, Verdict};
use crate::error::{invalid, Error, Result};
use crate::geodesics::{push_forward, AffineFlow, Rebinning};
use crate::measures::{entropy, GridMeasure, ReferenceMeasure};
use crate::spacetime::minkowski::causal_raw;
use crate::spacetime::{BoxRegion, Event, LorentzSpace, MinkowskiSpace};

/// Remainder function `omega` of the upper bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum Remainder {
    /// `omega = 0`.
    Zero,
    /// Piecewise-linear interpolation of `(r, omega)` samples, constant
    /// beyond the last sample. Values must be non-negative.
    Tabulated { points: Vec<(f64, f64)> },
    /// `omega(r) r^2 = 4 eps`, where `eps` is the largest deviation between
    /// re-binned and exact entropies at the three witness times.
    RebinningBudget,
}

impl Remainder {
    fn evaluate(&self, r: f64, rebin_error: f64) -> f64 {
        match self {
            Remainder::Zero => 0.0,
            Remainder::Tabulated { points } => {
                let Some(first) = points.first() else { return 0.0 };
                if r <= first.0 {
                    return first.1;
                }
                for w in points.windows(2) {
                    let ((r0, w0), (r1, w1)) = (w[0], w[1]);
                    if r <= r1 {
                        return w0 + (w1 - w0) * (r - r0) / (r1 - r0);
                    }
                }
                points.last().unwrap().1
            }
            Remainder::RebinningBudget => 4.0 * rebin_error / (r * r),
        }
    }
}

/// Parameters of the synthetic timelike Ricci upper bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperBoundParams {
    pub k: f64,
    pub r0: f64,
    pub omega: Remainder,
    /// Expansion rates of the dilation witnesses tried after the translation.
    pub dilation_rates: Vec<f64>,
    pub tol: f64,
}

impl UpperBoundParams {
    pub fn new(k: f64, r0: f64) -> Self {
        UpperBoundParams { k, r0, omega: Remainder::RebinningBudget, dilation_rates: vec![0.5], tol: 1e-9 }
    }

    pub fn with_omega(mut self, omega: Remainder) -> Self {
        self.omega = omega;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.r0 > 0.0) {
            return Err(invalid("r0", "scale bound must be positive"));
        }
        if let Remainder::Tabulated { points } = &self.omega {
            if points.iter().any(|(_, w)| !(*w >= 0.0)) {
                return Err(invalid("omega", "remainder values must be non-negative"));
            }
        }
        Ok(())
    }
}

/// Outcome for one witness geodesic `(mu_t)_{t in [-1, 1]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessOutcome {
    pub name: String,
    /// `Ent(mu_-1) - 2 Ent(mu_0) + Ent(mu_1)` from re-binned measures.
    pub second_difference: f64,
    /// The same quantity from exact Jacobians.
    pub analytic_second_difference: f64,
    /// `(K + omega(r)) r^2`.
    pub bound: f64,
    pub support_near_y: bool,
    pub endpoints_causal: bool,
    pub within_outer_ball: bool,
    pub passes: bool,
}

/// Tries straight-line witnesses through `mu0` toward `y`: the translation
/// by `y - x` and dilations about `x` superposed on it. Passes when some
/// witness meets every requirement. In Minkowski space the entropy is convex
/// along every `l_p`-geodesic, so when `K + omega(r) < 0` no witness can exist
/// and the verdict is a definite failure.
pub fn ricci_upper_check(
    space: &MinkowskiSpace,
    x: &Event,
    y: &Event,
    mu0: &GridMeasure,
    params: &UpperBoundParams,
    p: f64,
) -> Result<(CurvatureReport, Vec<WitnessOutcome>)> {
    params.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid("p", format!("exponent must lie in (0, 1), got {p}")));
    }
    space.check(x)?;
    space.check(y)?;
    let r = space.distance(x, y);
    if !(r > 0.0 && r < params.r0) {
        return Err(Error::Precondition(format!("d(x, y) = {r} is not in (0, r0)")));
    }
    let (r2, r4) = (r * r, r.powi(4));
    // every pair of B_{r^4}(x) x B_{r^2}(y) is chronological iff the time gap
    // beats the light-cone distance by sqrt(2) times the radii
    let dt = y.time() - x.time();
    let dx = y.spatial().iter().zip(x.spatial()).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    if dt - dx <= std::f64::consts::SQRT_2 * (r2 + r4) {
        return Err(Error::Precondition("B_{r^4}(x) x B_{r^2}(y) is not chronological".into()));
    }
    let bbox = support_bbox(mu0);
    if bbox.corners().iter().any(|c| c.euclidean_distance(x) > r4) {
        return Err(Error::Precondition("supp mu0 is not inside B_{r^4}(x)".into()));
    }

    let v: Vec<f64> = y.coords().iter().zip(x.coords()).map(|(a, b)| a - b).collect();
    let mut witnesses = vec![("translation".to_string(), AffineFlow::translation(v.clone()))];
    for &rate in &params.dilation_rates {
        if rate.abs() < 1.0 {
            witnesses.push((format!("dilation({rate})"), AffineFlow { center: x.clone(), velocity: v.clone(), rate }));
        }
    }
    let e0 = entropy(mu0, &ReferenceMeasure::lebesgue(&mu0.grid))?.value();
    let n = space.dim() as f64;
    let mut outcomes = Vec::new();
    for (name, flow) in witnesses {
        let ent = |t: f64| -> Result<f64> {
            let mu = push_forward(mu0, &flow, t, &Rebinning::Adapted)?.ok_or(Error::EmptyRegion)?;
            Ok(entropy(&mu, &ReferenceMeasure::lebesgue(&mu.grid))?.value())
        };
        let (em, ep) = (ent(-1.0)?, ent(1.0)?);
        let exact = |t: f64| e0 - n * flow.scale(t).ln();
        let second = em - 2.0 * e0 + ep;
        let analytic = exact(-1.0) - 2.0 * e0 + exact(1.0);
        let rebin_error = (em - exact(-1.0)).abs().max((ep - exact(1.0)).abs());
        let bound = (params.k + params.omega.evaluate(r, rebin_error)) * r2;

        let push_box = |t: f64| -> BoxRegion {
            let lo = flow.apply(&Event::from(bbox.lo.clone()), t);
            let hi = flow.apply(&Event::from(bbox.hi.clone()), t);
            let (lo, hi) = lo.coords().iter().zip(hi.coords()).map(|(a, b)| (a.min(*b), a.max(*b))).unzip();
            BoxRegion { lo, hi }
        };
        let (bm, bp) = (push_box(-1.0), push_box(1.0));
        let support_near_y = bp.corners().iter().all(|c| c.euclidean_distance(y) <= r2);
        // the difference set of two boxes is a box; the causal cone is convex
        let diff = BoxRegion {
            lo: bp.lo.iter().zip(&bm.hi).map(|(a, b)| a - b).collect(),
            hi: bp.hi.iter().zip(&bm.lo).map(|(a, b)| a - b).collect(),
        };
        let origin = vec![0.0; diff.dim()];
        let endpoints_causal = diff.corners().iter().all(|c| causal_raw(&origin, c.coords()));
        // straight trajectories keep all supports in the hull of the endpoint boxes
        let outer = 10.0 * params.r0;
        let within_outer_ball = bm.corners().iter().chain(bp.corners().iter()).all(|c| c.euclidean_distance(x) < outer);
        let passes = support_near_y
            && endpoints_causal
            && within_outer_ball
            && second - bound <= params.tol * second.abs().max(bound.abs()).max(1.0);
        outcomes.push(WitnessOutcome {
            name,
            second_difference: second,
            analytic_second_difference: analytic,
            bound,
            support_near_y,
            endpoints_causal,
            within_outer_ball,
            passes,
        });
    }

    let best = outcomes
        .iter()
        .filter(|o| o.support_near_y && o.endpoints_causal && o.within_outer_ball)
        .map(|o| o.bound - o.second_difference)
        .fold(f64::NEG_INFINITY, f64::max);
    let any_pass = outcomes.iter().any(|o| o.passes);
    let omega_r = outcomes.first().map(|o| o.bound / r2 - params.k).unwrap_or(0.0);
    let mut notes = Vec::new();
    let verdict = if any_pass {
        Verdict::Pass
    } else if params.k + omega_r < 0.0 {
        notes.push("entropy is convex along every l_p-geodesic of Minkowski space, so no witness exists".into());
        Verdict::Fail
    } else {
        notes.push("inconclusive: every witness geodesic failed".into());
        Verdict::Inconclusive
    };
    let report = CurvatureReport {
        verdict,
        margin: best,
        t_star: None,
        diameter_obstruction: false,
        notes,
        inputs: json!({ "check": "ricci-upper", "params": params, "p": p, "x": x, "y": y, "r": r }),
    };
    Ok((report, outcomes))
}
