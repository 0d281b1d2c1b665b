//! Timelike Bishop-Gromov: the model volume ratio and a stratified Monte Carlo
//! estimate of tau-ball volumes in Minkowski space.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::s_kappa;
use crate::error::{invalid, Error, Result};
use crate::rng;
use crate::spacetime::minkowski::{causal_raw, tau_raw};
use crate::spacetime::{BoxRegion, Event, MinkowskiSpace};
use crate::tolerances::QUADRATURE;

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute accuracy `eps`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, eps: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), eps, 48)
}

/// Largest admissible outer radius `pi sqrt((N-1)/(K v 0))`.
fn radius_cap(k: f64, n: f64) -> f64 {
    if k > 0.0 {
        PI * ((n - 1.0) / k).sqrt()
    } else {
        f64::INFINITY
    }
}

/// `int_0^r s_{K/(N-1)}^{N-1} / int_0^R s_{K/(N-1)}^{N-1}`.
pub fn bishop_gromov_model_ratio(k: f64, n: f64, r: f64, big_r: f64) -> Result<f64> {
    if !(n > 1.0 && n.is_finite() && k.is_finite()) {
        return Err(invalid("N", format!("must lie in (1, inf), got {n}")));
    }
    if !(r > 0.0 && r <= big_r) {
        return Err(invalid("r", format!("need 0 < r <= R, got r = {r}, R = {big_r}")));
    }
    let cap = radius_cap(k, n);
    if big_r > cap {
        return Err(invalid("R", format!("exceeds the cap {cap} for K = {k}, N = {n}")));
    }
    if r == big_r {
        return Ok(1.0);
    }
    let kappa = k / (n - 1.0);
    let density = |t: f64| s_kappa(kappa, t).max(0.0).powf(n - 1.0);
    let num = adaptive_simpson(&density, 0.0, r, QUADRATURE);
    let den = num + adaptive_simpson(&density, r, big_r, QUADRATURE);
    Ok(num / den)
}

/// A region that is tau-star-shaped with respect to its apex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum StarShapedRegion {
    /// `J+(apex) ∩ J-(tip)`.
    Diamond { apex: Event, tip: Event },
    /// `J+(apex) ∩ {t <= t_apex + height}`.
    TruncatedCone { apex: Event, height: f64 },
}

impl StarShapedRegion {
    pub fn diamond(apex: Event, tip: Event) -> Result<Self> {
        if apex.dim() != tip.dim() {
            return Err(Error::DimensionMismatch { expected: apex.dim(), got: tip.dim() });
        }
        if tau_raw(apex.coords(), tip.coords()) <= 0.0 {
            return Err(invalid("tip", "must lie in the chronological future of the apex"));
        }
        Ok(StarShapedRegion::Diamond { apex, tip })
    }

    pub fn truncated_cone(apex: Event, height: f64) -> Result<Self> {
        if !(height > 0.0 && height.is_finite()) {
            return Err(invalid("height", format!("must be positive, got {height}")));
        }
        Ok(StarShapedRegion::TruncatedCone { apex, height })
    }

    pub fn apex(&self) -> &Event {
        match self {
            StarShapedRegion::Diamond { apex, .. } | StarShapedRegion::TruncatedCone { apex, .. } => apex,
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            StarShapedRegion::Diamond { apex, tip } => causal_raw(apex.coords(), x) && causal_raw(x, tip.coords()),
            StarShapedRegion::TruncatedCone { apex, height } => {
                causal_raw(apex.coords(), x) && x[0] <= apex.time() + height
            }
        }
    }

    /// Axis-aligned box containing the region.
    pub fn bounding_box(&self) -> Result<BoxRegion> {
        match self {
            StarShapedRegion::Diamond { apex, tip } => {
                let (a, b) = (apex.coords(), tip.coords());
                let half = 0.5 * (b[0] - a[0]);
                let mut lo = vec![a[0]];
                let mut hi = vec![b[0]];
                for k in 1..a.len() {
                    let mid = 0.5 * (a[k] + b[k]);
                    lo.push(mid - half);
                    hi.push(mid + half);
                }
                BoxRegion::new(lo, hi)
            }
            StarShapedRegion::TruncatedCone { apex, height } => {
                let a = apex.coords();
                let lo = a.iter().enumerate().map(|(k, &c)| if k == 0 { c } else { c - height }).collect();
                let hi = a.iter().map(|&c| c + height).collect();
                BoxRegion::new(lo, hi)
            }
        }
    }

    /// Sampled star-shapedness: for `samples` members `x`, the geodesic points
    /// from the apex to `x` at `steps` intermediate times stay inside.
    pub fn star_shaped_sampled(&self, samples: usize, steps: usize, seed: u64) -> bool {
        let bbox = match self.bounding_box() {
            Ok(b) => b,
            Err(_) => return false,
        };
        let mut rng = rng::stream(seed, 0);
        let apex = self.apex();
        let mut seen = 0;
        let mut attempts = 0;
        while seen < samples && attempts < 100 * samples {
            attempts += 1;
            let x = bbox.sample(&mut rng);
            if !self.contains(x.coords()) {
                continue;
            }
            seen += 1;
            for s in 1..=steps {
                let p = apex.lerp(&x, s as f64 / steps as f64);
                if !self.contains(p.coords()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Monte Carlo estimate of `v(E, r)/v(E, R)` with a binomial confidence interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BishopGromovEstimate {
    pub r: f64,
    pub big_r: f64,
    pub samples: usize,
    pub hits_inner: u64,
    pub hits_outer: u64,
    pub ratio: f64,
    /// Binomial standard error of the ratio.
    pub sigma: f64,
    /// `3 sigma`.
    pub half_width: f64,
    /// Model ratio with `K = 0` and `N` equal to the spacetime dimension.
    pub model: f64,
    /// `ratio + half_width >= model`.
    pub holds: bool,
}

/// Hits per stratum aimed at by the stratification.
const SAMPLES_PER_STRATUM: usize = 256;

/// Stratified Monte Carlo estimate of the tau-ball volume ratio inside `region`.
///
/// The bounding box of the region is cut into equal strata; stratum `i`
/// receives a fixed share of the samples and draws them from sub-stream `i` of
/// the seed, so the counts depend only on `(seed, samples)`.
pub fn bishop_gromov_mc(
    space: &MinkowskiSpace,
    region: &StarShapedRegion,
    r: f64,
    big_r: f64,
    samples: usize,
    seed: u64,
) -> Result<BishopGromovEstimate> {
    let apex = region.apex();
    space.check(apex)?;
    if !(r > 0.0 && r <= big_r && big_r.is_finite()) {
        return Err(invalid("r", format!("need 0 < r <= R, got r = {r}, R = {big_r}")));
    }
    if samples == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    let bbox = region.bounding_box()?;
    let d = space.dim();
    let per_axis = (((samples / SAMPLES_PER_STRATUM).max(1) as f64).powf(1.0 / d as f64).floor() as usize).max(1);
    let strata = per_axis.pow(d as u32);
    let widths: Vec<f64> = (0..d).map(|k| (bbox.hi[k] - bbox.lo[k]) / per_axis as f64).collect();

    let (inner, outer) = (0..strata)
        .into_par_iter()
        .map(|s| {
            let quota = samples / strata + usize::from(s < samples % strata);
            let mut rng = rng::stream(seed, s as u64);
            let mut lo = vec![0.0; d];
            let mut rest = s;
            for k in (0..d).rev() {
                lo[k] = bbox.lo[k] + (rest % per_axis) as f64 * widths[k];
                rest /= per_axis;
            }
            let mut x = vec![0.0; d];
            let (mut inner, mut outer) = (0u64, 0u64);
            for _ in 0..quota {
                for k in 0..d {
                    x[k] = lo[k] + rng.random::<f64>() * widths[k];
                }
                if !region.contains(&x) {
                    continue;
                }
                let tau = tau_raw(apex.coords(), &x);
                if tau > 0.0 && tau < big_r {
                    outer += 1;
                    if tau < r {
                        inner += 1;
                    }
                }
            }
            (inner, outer)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    if outer == 0 {
        return Err(Error::ZeroHits);
    }
    let ratio = inner as f64 / outer as f64;
    let sigma = (ratio * (1.0 - ratio) / outer as f64).sqrt();
    let half_width = 3.0 * sigma;
    let model = bishop_gromov_model_ratio(0.0, d as f64, r, big_r)?;
    Ok(BishopGromovEstimate {
        r,
        big_r,
        samples,
        hits_inner: inner,
        hits_outer: outer,
        ratio,
        sigma,
        half_width,
        model,
        holds: ratio + half_width >= model,
    })
}
