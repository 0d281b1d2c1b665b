//! Verification of the synthetic Hawking bound `tau_V <= D_{H0,K,N}` on probes.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::achronal::{tau_v, tau_v_finite, AchronalSet};
use super::mean_curvature::{MeanCurvatureEstimate, Side};
use crate::comparison::{hawking_bound, HawkingParams};
use crate::curvature::{c_kappa, s_kappa, CurvatureReport, Verdict};
use crate::error::{invalid, Error, Result};
use crate::measures::ReferenceMeasure;
use crate::spacetime::{CausalDagSpace, DagEdge, Event, LorentzSpace, MinkowskiSpace};

/// Signed time separation from an achronal set, evaluated at points of a space.
pub trait SignedTime {
    type Point;
    fn tau_v(&self, x: &Self::Point) -> Result<f64>;
}

/// An achronal set of Minkowski space.
pub struct MinkowskiAchronal<'a> {
    pub space: &'a MinkowskiSpace,
    pub set: &'a AchronalSet,
}

impl SignedTime for MinkowskiAchronal<'_> {
    type Point = Event;
    fn tau_v(&self, x: &Event) -> Result<f64> {
        tau_v(self.space, self.set, x)
    }
}

/// A finite achronal subset of any space.
pub struct FiniteAchronal<'a, S: LorentzSpace> {
    pub space: &'a S,
    pub points: &'a [S::Point],
}

impl<S: LorentzSpace> SignedTime for FiniteAchronal<'_, S> {
    type Point = S::Point;
    fn tau_v(&self, x: &S::Point) -> Result<f64> {
        Ok(tau_v_finite(self.space, self.points, x))
    }
}

/// Evidence that the forward mean curvature of `V` is bounded above.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum MeanCurvatureCertificate {
    /// A Monte Carlo estimate; its upper confidence limit is the bound.
    Estimate(MeanCurvatureEstimate),
    /// A bound known from the construction of `V`.
    ByConstruction { bound: f64 },
}

impl MeanCurvatureCertificate {
    pub fn upper_bound(&self) -> Result<f64> {
        match self {
            MeanCurvatureCertificate::Estimate(e) if e.side == Side::Upper => Ok(e.value + e.half_width),
            MeanCurvatureCertificate::Estimate(_) => Err(invalid("certificate", "estimate must target the upper side")),
            MeanCurvatureCertificate::ByConstruction { bound } => Ok(*bound),
        }
    }
}

/// `tau_V(probe) <= D_{H0,K,N}` on every probe, after checking that the mean
/// curvature of `V` is certified to be at most `H0`.
pub fn hawking_verify<T: SignedTime>(
    v: &T,
    probes: &[T::Point],
    params: &HawkingParams,
    certificate: &MeanCurvatureCertificate,
    tol: f64,
) -> Result<CurvatureReport> {
    if !(tol > 0.0) {
        return Err(invalid("tol", "must be positive"));
    }
    let bound = certificate.upper_bound()?;
    if bound > params.h0 + tol {
        return Err(Error::Precondition(format!(
            "mean curvature is only certified below {bound:.6}, which exceeds H0 = {}",
            params.h0
        )));
    }
    let d = hawking_bound(params)?;
    let values: Vec<f64> = probes.iter().map(|p| v.tau_v(p)).collect::<Result<_>>()?;
    let (worst, max_tau) =
        values
            .iter()
            .enumerate()
            .fold((None, f64::NEG_INFINITY), |(w, m), (i, &t)| if t > m { (Some(i), t) } else { (w, m) });
    let margin = d - max_tau;
    let verdict = if probes.is_empty() || margin >= -tol { Verdict::Pass } else { Verdict::Fail };
    Ok(CurvatureReport {
        verdict,
        margin,
        t_star: None,
        diameter_obstruction: false,
        notes: vec![format!("largest tau_V on {} probes: {max_tau:.12}", probes.len())],
        inputs: json!({
            "H0": params.h0,
            "K": params.k,
            "N": params.n,
            "D": d,
            "max_tau_v": max_tau,
            "worst_probe": worst,
            "certified_mean_curvature": bound,
        }),
    })
}

/// Causal DAG made of disjoint model rays issuing from an achronal set of
/// roots, with node weights sampled from the one-dimensional model density.
#[derive(Clone, Debug)]
pub struct ModelRays {
    pub space: CausalDagSpace,
    pub roots: Vec<usize>,
    pub tips: Vec<usize>,
    pub reference: ReferenceMeasure,
    /// Length of each ray.
    pub length: f64,
}

/// Model density `(c_kappa(t) + H0/(N-1) s_kappa(t))^{N-1}`, `kappa = K/(N-1)`,
/// with `h(0) = 1` and `h'(0) = H0`.
pub fn model_density(params: &HawkingParams, t: f64) -> f64 {
    let m = params.n - 1.0;
    let kappa = params.k / m;
    (c_kappa(kappa, t) + params.h0 / m * s_kappa(kappa, t)).max(0.0).powf(m)
}

/// `rays` chains of `segments` equal edges, each of total length
/// `fraction * D_{H0,K,N}`.
pub fn model_ray_dag(params: &HawkingParams, fraction: f64, rays: usize, segments: usize) -> Result<ModelRays> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(invalid("fraction", format!("must lie in (0, 1], got {fraction}")));
    }
    if rays == 0 || segments == 0 {
        return Err(invalid("rays", "need at least one ray with one segment"));
    }
    let length = fraction * hawking_bound(params)?;
    let per_ray = segments + 1;
    let n = rays * per_ray;
    let mut edges = Vec::with_capacity(rays * segments);
    let mut weights = vec![0.0; n];
    for r in 0..rays {
        let base = r * per_ray;
        for k in 0..per_ray {
            weights[base + k] = model_density(params, length * k as f64 / segments as f64);
        }
        for k in 0..segments {
            edges.push(DagEdge { from: base + k, to: base + k + 1, weight: length / segments as f64 });
        }
    }
    let space = CausalDagSpace::new(n, edges)?;
    Ok(ModelRays {
        space,
        roots: (0..rays).map(|r| r * per_ray).collect(),
        tips: (0..rays).map(|r| r * per_ray + segments).collect(),
        reference: ReferenceMeasure::node_weights(weights)?,
        length,
    })
}
