//! Synthetic mean curvature of an achronal graph from second-order volume
//! growth of normal variations.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::achronal::AchronalSet;
use crate::curvature::Verdict;
use crate::error::{invalid, Error, Result};
use crate::rng;
use crate::spacetime::{Event, MinkowskiSpace};

/// Variation profile `phi = height * 1_W` on the footpoints whose spatial
/// coordinates lie in the window `W`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationProfile {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub height: f64,
}

impl VariationProfile {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, height: f64) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a < b)) {
            return Err(Error::EmptyRegion);
        }
        if !(height > 0.0 && height.is_finite()) {
            return Err(invalid("height", format!("must be positive, got {height}")));
        }
        Ok(VariationProfile { lo, hi, height })
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        VariationProfile::new(self.lo.clone(), self.hi.clone(), self.height * c)
    }

    fn value(&self, s: &[f64]) -> f64 {
        if s.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| x >= a && x <= b) {
            self.height
        } else {
            0.0
        }
    }
}

/// Which one-sided bound the estimate is meant to certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanCurvatureParams {
    /// Largest variation time; the quotient is sampled at `t0 / 2^k`, `k < 4`.
    pub t0: f64,
    pub samples: usize,
    /// Independent batches used for the confidence interval.
    pub batches: usize,
    pub seed: u64,
}

impl Default for MeanCurvatureParams {
    fn default() -> Self {
        MeanCurvatureParams { t0: 0.2, samples: 1 << 17, batches: 32, seed: 0 }
    }
}

/// Whether the Monte Carlo noise leaves the sign of the estimate resolved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum EstimateStatus {
    Resolved,
    Inconclusive { required_samples: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanCurvatureEstimate {
    pub side: Side,
    /// Extrapolated second-variation quotient divided by `int phi^2 dH0`.
    pub value: f64,
    /// Three standard errors over the batches.
    pub half_width: f64,
    /// Estimate of `int phi dH0`.
    pub first_variation: f64,
    /// `(t, normalized difference quotient)` at each sampled time.
    pub quotients: Vec<(f64, f64)>,
    pub status: EstimateStatus,
    pub samples: usize,
}

impl MeanCurvatureEstimate {
    /// Verdict on the claim "mean curvature bounded on `side` by `h0`".
    pub fn certifies(&self, h0: f64) -> Verdict {
        let (lo, hi) = (self.value - self.half_width, self.value + self.half_width);
        match self.side {
            Side::Upper if hi <= h0 => Verdict::Pass,
            Side::Upper if lo > h0 => Verdict::Fail,
            Side::Lower if lo >= h0 => Verdict::Pass,
            Side::Lower if hi < h0 => Verdict::Fail,
            _ => Verdict::Inconclusive,
        }
    }
}

const LEVELS: usize = 4;

/// Noise floor below which a zero estimate counts as resolved.
const NOISE_FLOOR: f64 = 0.05;

/// Least-squares quadratic `q(t) = c0 + c1 t + c2 t^2`.
fn quadratic_fit(t: &[f64], q: &[f64]) -> [f64; 3] {
    let mut a = [[0.0; 3]; 3];
    let mut b = [0.0; 3];
    for (&ti, &qi) in t.iter().zip(q) {
        let p = [1.0, ti, ti * ti];
        for r in 0..3 {
            b[r] += p[r] * qi;
            for c in 0..3 {
                a[r][c] += p[r] * p[c];
            }
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 normal equations
    for col in 0..3 {
        let piv = (col..3).fold(col, |m, r| if a[r][col].abs() > a[m][col].abs() { r } else { m });
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..3 {
            let f = a[r][col] / a[col][col];
            for c in col..3 {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for r in (0..3).rev() {
        x[r] = (b[r] - (r + 1..3).map(|c| a[r][c] * x[c]).sum::<f64>()) / a[r][r];
    }
    x
}

/// Monte Carlo estimate of the normalized second variation
/// `lim (m(V_{t,phi}) - t int phi dH0) / (t^2/2) / int phi^2 dH0`.
///
/// Samples are drawn in the band `{0 <= t' - f(s) <= t * height}` over the
/// window widened by the normal drift, with the same underlying uniforms for
/// every `t`, so the volumes are strongly correlated across levels. The ratio
/// `m(V_t)/t` is fitted by a quadratic in `t`; its intercept estimates
/// `int phi dH0` and its slope the second variation.
pub fn mean_curvature_estimate(
    space: &MinkowskiSpace,
    v: &AchronalSet,
    phi: &VariationProfile,
    side: Side,
    params: &MeanCurvatureParams,
) -> Result<MeanCurvatureEstimate> {
    let d = space.spatial_dim();
    if phi.lo.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: phi.lo.len() });
    }
    if !(params.t0 > 0.0 && params.t0.is_finite()) {
        return Err(invalid("t0", "must be positive"));
    }
    if params.batches < 2 || params.samples < params.batches {
        return Err(invalid("samples", "need at least two batches with one sample each"));
    }
    let drift = v.normal_drift(&phi.lo, &phi.hi).ok_or_else(|| invalid("V", "mean curvature needs a graph"))?;
    let times: Vec<f64> = (0..LEVELS).map(|k| params.t0 / f64::from(1 << k)).collect();
    let c = phi.height;
    let per_batch = params.samples / params.batches;

    let counts: Vec<Vec<u64>> = (0..params.batches)
        .into_par_iter()
        .map(|b| -> Result<Vec<u64>> {
            let mut rng = rng::stream(params.seed, b as u64);
            let mut hits = vec![0u64; LEVELS];
            let mut s = vec![0.0; d];
            for _ in 0..per_batch {
                let unit: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
                let u: f64 = rng.random();
                for (k, &t) in times.iter().enumerate() {
                    let pad = t * c * drift;
                    for j in 0..d {
                        s[j] = phi.lo[j] - pad + unit[j] * (phi.hi[j] - phi.lo[j] + 2.0 * pad);
                    }
                    let f = v.height(&s).expect("graph");
                    let x = Event::from_parts(f + u * t * c, &s);
                    let p = v.project(space, &x)?;
                    if let Some(foot) = &p.footpoint {
                        if p.tau >= 0.0 && p.tau <= t * phi.value(foot.spatial()) {
                            hits[k] += 1;
                        }
                    }
                }
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;

    let q_of = |hits: &[u64], n: usize| -> Vec<f64> {
        times
            .iter()
            .zip(hits)
            .map(|(&t, &h)| {
                let pad = t * c * drift;
                let area: f64 = (0..d).map(|j| phi.hi[j] - phi.lo[j] + 2.0 * pad).product();
                // m(V_t) / t = c * area * P
                c * area * h as f64 / n as f64
            })
            .collect()
    };
    let fit_value = |q: &[f64]| -> (f64, f64) {
        let [a, beta, _] = quadratic_fit(&times, q);
        (a, if a > 0.0 { 2.0 * beta / (c * a) } else { 0.0 })
    };

    let pooled: Vec<u64> = (0..LEVELS).map(|k| counts.iter().map(|h| h[k]).sum()).collect();
    let q = q_of(&pooled, per_batch * params.batches);
    let (first, value) = fit_value(&q);
    let batch_values: Vec<f64> = counts.iter().map(|h| fit_value(&q_of(h, per_batch)).1).collect();
    let mean = batch_values.iter().sum::<f64>() / batch_values.len() as f64;
    let var = batch_values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (batch_values.len() - 1) as f64;
    let half_width = 3.0 * (var / batch_values.len() as f64).sqrt();
    let quotients = times.iter().zip(&q).map(|(&t, &qt)| (t, 2.0 * (qt - first) / (t * c * first))).collect();
    let scale = value.abs().max(NOISE_FLOOR);
    let status = if half_width > scale {
        EstimateStatus::Inconclusive {
            required_samples: (params.samples as f64 * (half_width / scale).powi(2)).ceil() as usize,
        }
    } else {
        EstimateStatus::Resolved
    };
    Ok(MeanCurvatureEstimate {
        side,
        value,
        half_width,
        first_variation: first,
        quotients,
        status,
        samples: per_batch * params.batches,
    })
}
