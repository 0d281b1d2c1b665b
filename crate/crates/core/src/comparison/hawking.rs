//! The Hawking comparison constant, an independent ODE oracle for it, and the
//! Bonnet-Myers diameter bound.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Parameters `(H0, K, N)` of the Hawking comparison constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HawkingParams {
    pub h0: f64,
    pub k: f64,
    pub n: f64,
}

/// The case of the comparison constant that applies to a parameter triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HawkingRegime {
    /// `K > 0`, `H0 = 0`.
    PositiveUntrapped,
    /// `K > 0`, `H0 != 0`.
    Positive,
    /// `K = 0`, `H0 < 0`.
    Flat,
    /// `K < 0`, `H0 < -sqrt(-K (N - 1))`.
    Negative,
}

impl HawkingParams {
    pub fn new(h0: f64, k: f64, n: f64) -> Result<Self> {
        if !(h0.is_finite() && k.is_finite()) {
            return Err(invalid("H0/K", "must be finite"));
        }
        if !(n > 1.0 && n.is_finite()) {
            return Err(invalid("N", format!("must lie in (1, inf), got {n}")));
        }
        Ok(HawkingParams { h0, k, n })
    }

    pub fn regime(&self) -> Result<HawkingRegime> {
        let HawkingParams { h0, k, n } = *self;
        if k > 0.0 {
            Ok(if h0 == 0.0 { HawkingRegime::PositiveUntrapped } else { HawkingRegime::Positive })
        } else if k == 0.0 {
            if h0 < 0.0 {
                Ok(HawkingRegime::Flat)
            } else {
                Err(Error::OutOfRegime(format!("K = 0 requires H0 < 0, got H0 = {h0}")))
            }
        } else {
            let threshold = -(-k * (n - 1.0)).sqrt();
            if h0 < threshold {
                Ok(HawkingRegime::Negative)
            } else {
                Err(Error::OutOfRegime(format!("K = {k} requires H0 < {threshold}, got H0 = {h0}")))
            }
        }
    }
}

/// Inverse cotangent with values in `(0, pi)`.
fn arccot(x: f64) -> f64 {
    FRAC_PI_2 - x.atan()
}

/// Inverse hyperbolic cotangent for `|x| > 1`.
fn arcoth(x: f64) -> f64 {
    0.5 * ((x + 1.0) / (x - 1.0)).ln()
}

/// Closed-form comparison constant `D_{H0,K,N}`.
pub fn hawking_bound(params: &HawkingParams) -> Result<f64> {
    let HawkingParams { h0, k, n } = *params;
    let m = n - 1.0;
    Ok(match params.regime()? {
        HawkingRegime::PositiveUntrapped => FRAC_PI_2 * (m / k).sqrt(),
        HawkingRegime::Positive => (m / k).sqrt() * arccot(-h0 / (k * m).sqrt()),
        HawkingRegime::Flat => -m / h0,
        HawkingRegime::Negative => (-m / k).sqrt() * arcoth(-h0 / (-k * m).sqrt()),
    })
}

/// Timelike Bonnet-Myers bound `pi sqrt((N - 1)/K)`.
pub fn bonnet_myers_bound(k: f64, n: f64) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(invalid("K", format!("must be positive, got {k}")));
    }
    if !(n > 1.0 && n.is_finite()) {
        return Err(invalid("N", format!("must lie in (1, inf), got {n}")));
    }
    Ok(PI * ((n - 1.0) / k).sqrt())
}

/// Accepted Richardson error estimate of the oracle.
const RICHARDSON_BUDGET: f64 = 1e-8;

/// Upper limit on the integration horizon.
const MAX_STEPS: usize = 50_000_000;

/// First zero of the model density by direct integration.
///
/// The density is `h = y^{N-1}` with `y'' = -K/(N-1) y`, `y(0) = 1` and
/// `y'(0) = H0/(N-1)`, so that `h(0) = 1` and `h'(0) = H0`. The ODE is
/// integrated with classical RK4 at `step` and `step/2`; the crossing inside
/// the last step is located by bisection on a re-integrated sub-step, and the
/// two results are Richardson-combined. When the half-step result moves the
/// zero by more than the budget, the step is reported as too coarse.
///
/// For `K <= 0` the integration stops as soon as `y' + sqrt(-kappa) y >= 0`:
/// the logarithmic slope then stays above `-sqrt(-kappa)` forever, so the
/// density never vanishes.
pub fn riccati_oracle(params: &HawkingParams, step: f64) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(invalid("step", format!("must be positive, got {step}")));
    }
    let coarse = first_zero(params, step)?;
    let fine = first_zero(params, step / 2.0)?;
    let estimate = (fine - coarse).abs() / 15.0;
    if estimate > RICHARDSON_BUDGET {
        return Err(Error::StepTooCoarse { discrepancy: (fine - coarse).abs() });
    }
    Ok(fine + (fine - coarse) / 15.0)
}

fn rk4(kappa: f64, (y, v): (f64, f64), h: f64) -> (f64, f64) {
    let f = |y: f64, v: f64| (v, -kappa * y);
    let k1 = f(y, v);
    let k2 = f(y + 0.5 * h * k1.0, v + 0.5 * h * k1.1);
    let k3 = f(y + 0.5 * h * k2.0, v + 0.5 * h * k2.1);
    let k4 = f(y + h * k3.0, v + h * k3.1);
    (y + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0), v + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1))
}

fn first_zero(params: &HawkingParams, h: f64) -> Result<f64> {
    let m = params.n - 1.0;
    let kappa = params.k / m;
    let escape = if kappa <= 0.0 { Some((-kappa).sqrt()) } else { None };
    let mut state = (1.0, params.h0 / m);
    let mut t = 0.0;
    for _ in 0..MAX_STEPS {
        if let Some(rate) = escape {
            if state.1 + rate * state.0 >= 0.0 {
                return Err(Error::NoZero(format!(
                    "density stays positive: log-slope {:.6} >= {:.6} at t = {t:.6}",
                    state.1 / state.0,
                    -rate
                )));
            }
        }
        let next = rk4(kappa, state, h);
        if next.0 <= 0.0 {
            let (mut lo, mut hi) = (0.0, h);
            while hi - lo > 1e-15 * (1.0 + t) {
                let mid = 0.5 * (lo + hi);
                if rk4(kappa, state, mid).0 > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(t + 0.5 * (lo + hi));
        }
        state = next;
        t += h;
    }
    Err(Error::NoZero(format!("no zero before t = {t}")))
}
