use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{sigma, CurvatureParams, CurvatureReport, Verdict};
use crate::error::{Error, Result};
use crate::geodesics::{geodesic_entropy_curve, AffineFlow, EntropyCurve, Rebinning};
use crate::measures::{entropy, u_n, Entropy, GridMeasure, ReferenceMeasure};
use crate::spacetime::minkowski::tau_raw;
use crate::spacetime::{Event, LorentzSpace, MinkowskiSpace};

/// Verdicts of the differential inequality `e'' - e'^2/N >= K theta^2` and of
/// its transform `u'' <= -(K/N) theta^2 u` for `u = exp(-e/N)`, both tested
/// with centred differences at the interior grid points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformAgreement {
    pub differential_pass: bool,
    pub transformed_pass: bool,
    pub agree: bool,
    /// Smallest normalized slack of the differential form.
    pub differential_margin: f64,
    /// Smallest normalized slack of the transformed form.
    pub transformed_margin: f64,
}

#[allow(non_snake_case)]
pub fn uN_transform_check(curve: &EntropyCurve, k: f64, n: f64, tol: f64) -> Result<TransformAgreement> {
    let h = curve.uniform_step()?;
    let e = &curve.entropy;
    if e.len() < 3 {
        return Err(Error::NonUniformGrid);
    }
    let theta2 = curve.tau_l2 * curve.tau_l2;
    let mut dm = f64::INFINITY;
    let mut um = f64::INFINITY;
    for i in 1..e.len() - 1 {
        if !(e[i - 1].is_finite() && e[i].is_finite() && e[i + 1].is_finite()) {
            continue;
        }
        let d2 = (e[i + 1] - 2.0 * e[i] + e[i - 1]) / (h * h);
        let d1 = (e[i + 1] - e[i - 1]) / (2.0 * h);
        let lhs = d2 - d1 * d1 / n;
        let scale = 1.0 + d2.abs() + d1 * d1 / n + k.abs() * theta2;
        dm = dm.min((lhs - k * theta2) / scale);

        let u = |x: f64| (-x / n).exp();
        let (a, b, c) = (u(e[i - 1]), u(e[i]), u(e[i + 1]));
        let u2 = (c - 2.0 * b + a) / (h * h);
        // -N u''/u equals e'' - e'^2/N for smooth curves
        let transformed = -n * u2 / b;
        let scale_u = 1.0 + transformed.abs() + k.abs() * theta2;
        um = um.min((transformed - k * theta2) / scale_u);
    }
    let (dp, up) = (dm >= -tol, um >= -tol);
    Ok(TransformAgreement {
        differential_pass: dp,
        transformed_pass: up,
        agree: dp == up,
        differential_margin: dm,
        transformed_margin: um,
    })
}

/// Integrated `(K, N)`-concavity of `u_N` along the curve:
/// `u(t) >= sigma^{(1-t)}(theta) u(0) + sigma^{(t)}(theta) u(1)`, with
/// `theta = ||tau||_{L^2(pi)}`. For `N = inf` the `K`-convexity of the entropy
/// is tested instead.
pub fn tcd_check(curve: &EntropyCurve, params: &CurvatureParams) -> Result<CurvatureReport> {
    params.validate()?;
    let (t, e) = (&curve.t, &curve.entropy);
    if t.len() < 2 || t[0] != 0.0 || *t.last().unwrap() != 1.0 {
        return Err(Error::Precondition("entropy curve must be sampled at t = 0 and t = 1".into()));
    }
    let last = e.len() - 1;
    let theta = curve.tau_l2;
    let mut worst = f64::INFINITY;
    let mut t_star = None;
    let mut obstruction = false;
    for i in 1..last {
        let ti = t[i];
        let slack = if params.n.is_infinite() {
            let rhs = (1.0 - ti) * e[0] + ti * e[last] - 0.5 * params.k * ti * (1.0 - ti) * theta * theta;
            if e[i] == f64::INFINITY {
                f64::NEG_INFINITY
            } else if rhs == f64::INFINITY {
                f64::INFINITY
            } else {
                (rhs - e[i]) / rhs.abs().max(e[i].abs()).max(1.0)
            }
        } else {
            let kappa = params.k / params.n;
            let u = |x: f64| u_n(Entropy(x), params.n);
            let (s0, s1) = (sigma(kappa, 1.0 - ti, theta), sigma(kappa, ti, theta));
            let term = |s: f64, v: f64| if v == 0.0 { 0.0 } else { s * v };
            let rhs = term(s0, u(e[0])) + term(s1, u(e[last]));
            if rhs.is_infinite() {
                obstruction = true;
                f64::NEG_INFINITY
            } else if rhs == 0.0 {
                0.0
            } else {
                (u(e[i]) - rhs) / rhs
            }
        };
        if slack < worst {
            worst = slack;
            t_star = Some(ti);
        }
    }
    let verdict = if worst >= -params.tol { Verdict::Pass } else { Verdict::Fail };
    let mut notes = Vec::new();
    if obstruction {
        notes.push("diameter obstruction: K theta^2 / N >= pi^2".to_string());
    }
    Ok(CurvatureReport {
        verdict,
        margin: worst,
        t_star,
        diameter_obstruction: obstruction,
        notes,
        inputs: json!({ "check": "tcd", "params": params, "tau_l2": theta, "samples": t.len() }),
    })
}

/// Default times for Dirac targets: 33 uniform interior points of `[0, 1]`.
pub fn default_tmcp_times() -> Vec<f64> {
    (1..=33).map(|k| k as f64 / 34.0).collect()
}

/// Report of [`tmcp_check`] with the curve it was computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TmcpOutcome {
    pub report: CurvatureReport,
    pub curve: EntropyCurve,
    /// `U_N(mu_t)` at the curve times.
    pub u: Vec<f64>,
    /// `U_N(mu_0)`.
    pub u0: f64,
    /// `sqrt(int tau(x, x_1)^2 dmu_0)`.
    pub theta: f64,
}

/// Measure contraction property toward the Dirac mass at `x1`:
/// `U_N(mu_t) >= sigma^{(1-t)}_{K/N}(theta) U_N(mu_0)` along the contraction.
/// The condition does not involve `p`.
pub fn tmcp_check(
    space: &MinkowskiSpace,
    mu0: &GridMeasure,
    x1: &Event,
    params: &CurvatureParams,
    times: &[f64],
) -> Result<TmcpOutcome> {
    params.validate()?;
    space.check(x1)?;
    if params.n.is_infinite() {
        return Err(Error::InvalidParameter { name: "N", reason: "the contraction property needs a finite N".into() });
    }
    if times.iter().any(|t| !(0.0..1.0).contains(t)) {
        return Err(Error::InvalidParameter { name: "times", reason: "times must lie in [0, 1)".into() });
    }
    let support_box = support_bbox(mu0);
    for corner in support_box.corners() {
        if !space.chronological(&corner, x1) {
            return Err(Error::Precondition(format!(
                "support corner {:?} is not in the chronological past of the target",
                corner.coords()
            )));
        }
    }
    let m = ReferenceMeasure::lebesgue(&mu0.grid);
    let u0 = u_n(entropy(mu0, &m)?, params.n);
    let theta = mu0
        .support()
        .map(|i| mu0.masses()[i] * tau_raw(mu0.grid.cell_center(i).coords(), x1.coords()).powi(2))
        .sum::<f64>()
        .sqrt();
    let flow = AffineFlow::contraction_to(x1.clone());
    let curve = geodesic_entropy_curve(space, mu0, &flow, times, &Rebinning::Adapted)?;
    let u: Vec<f64> = curve.entropy.iter().map(|e| u_n(Entropy(*e), params.n)).collect();
    let kappa = params.k / params.n;
    let mut worst = f64::INFINITY;
    let mut t_star = None;
    let mut obstruction = false;
    for (t, ut) in times.iter().zip(&u) {
        let s = sigma(kappa, 1.0 - t, theta);
        let slack = if s.is_infinite() {
            obstruction = true;
            f64::NEG_INFINITY
        } else {
            let rhs = s * u0;
            (ut - rhs) / rhs
        };
        if slack < worst {
            worst = slack;
            t_star = Some(*t);
        }
    }
    let verdict = if worst >= -params.tol { Verdict::Pass } else { Verdict::Fail };
    let mut notes = vec!["unique coupling toward a Dirac target: verdict is definite".to_string()];
    if obstruction {
        notes.push("diameter obstruction: K theta^2 / N >= pi^2".to_string());
    }
    Ok(TmcpOutcome {
        report: CurvatureReport {
            verdict,
            margin: worst,
            t_star,
            diameter_obstruction: obstruction,
            notes,
            inputs: json!({ "check": "tmcp", "params": params, "target": x1, "theta": theta, "samples": times.len() }),
        },
        curve,
        u,
        u0,
        theta,
    })
}

/// Bounding box of the charged cells.
pub(crate) fn support_bbox(mu: &GridMeasure) -> crate::spacetime::BoxRegion {
    let n = mu.grid.dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for i in mu.support() {
        let b = mu.grid.cell_box(i);
        for k in 0..n {
            lo[k] = lo[k].min(b.lo[k]);
            hi[k] = hi[k].max(b.hi[k]);
        }
    }
    crate::spacetime::BoxRegion { lo, hi }
}
