use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::measures::PointMeasure;
use crate::spacetime::LorentzSpace;
use crate::tolerances::ATOM_MERGE;
use crate::transport::CausalCoupling;

/// Geodesic from `start` to `end`, traversed on the parameter window
/// `[window.0, window.1]` of the full segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicCurve<P> {
    pub start: P,
    pub end: P,
    pub window: (f64, f64),
}

impl<P: Clone> GeodesicCurve<P> {
    pub fn new(start: P, end: P) -> Self {
        GeodesicCurve { start, end, window: (0.0, 1.0) }
    }

    /// `gamma_t` under the curve's own parametrization.
    pub fn point<S: LorentzSpace<Point = P>>(&self, space: &S, t: f64) -> Result<P> {
        let s = self.window.0 + t * (self.window.1 - self.window.0);
        space.geodesic_point(&self.start, &self.end, s).ok_or(Error::GeodesicsUnavailable)
    }
}

/// Weighted family of geodesics; an atomic dynamical plan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicalPlan<P> {
    curves: Vec<GeodesicCurve<P>>,
    weights: Vec<f64>,
}

impl<P: Clone + PartialEq + Send + Sync> DynamicalPlan<P> {
    pub fn new(curves: Vec<GeodesicCurve<P>>, weights: Vec<f64>) -> Result<Self> {
        if curves.len() != weights.len() || curves.is_empty() {
            return Err(invalid("weights", "one positive weight per curve is required"));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| *w <= 0.0) || (total - 1.0).abs() > crate::tolerances::MARGINAL {
            return Err(Error::DegenerateWeights(format!("curve weights sum to {total}")));
        }
        Ok(DynamicalPlan { curves, weights })
    }

    pub fn curves(&self) -> &[GeodesicCurve<P>] {
        &self.curves
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Pushforward `(e_t)_# eta`, merging atoms closer than the merge tolerance.
    pub fn evaluate<S: LorentzSpace<Point = P>>(&self, space: &S, t: f64) -> Result<PointMeasure<P>> {
        if !(0.0..=1.0).contains(&t) {
            return Err(invalid("t", format!("evaluation time {t} outside [0, 1]")));
        }
        let points: Vec<P> = self.curves.par_iter().map(|c| c.point(space, t)).collect::<Result<_>>()?;
        let mut support: Vec<P> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for (x, w) in points.into_iter().zip(&self.weights) {
            match support.iter().position(|y| space.distance(y, &x) <= ATOM_MERGE) {
                Some(k) => weights[k] += w,
                None => {
                    support.push(x);
                    weights.push(*w);
                }
            }
        }
        PointMeasure::normalized(support, weights)
    }

    /// Restriction `eta^{s1,s2}`: each curve reparametrized by
    /// `t -> gamma_{(1-t) s1 + t s2}`.
    pub fn restrict(&self, s1: f64, s2: f64) -> Result<Self> {
        if !(0.0 <= s1 && s1 < s2 && s2 <= 1.0) {
            return Err(invalid("window", format!("need 0 <= s1 < s2 <= 1, got ({s1}, {s2})")));
        }
        let curves = self
            .curves
            .iter()
            .map(|c| {
                let (a, b) = c.window;
                GeodesicCurve {
                    start: c.start.clone(),
                    end: c.end.clone(),
                    window: (a + s1 * (b - a), a + s2 * (b - a)),
                }
            })
            .collect();
        Ok(DynamicalPlan { curves, weights: self.weights.clone() })
    }
}

/// One geodesic per support pair of `plan`, weighted by its mass.
pub fn lift_plan<S: LorentzSpace>(
    space: &S,
    mu: &PointMeasure<S::Point>,
    nu: &PointMeasure<S::Point>,
    plan: &CausalCoupling,
) -> Result<DynamicalPlan<S::Point>> {
    if !space.has_geodesics() {
        return Err(Error::GeodesicsUnavailable);
    }
    if !plan.causal {
        return Err(Error::Precondition("plan charges non-causal pairs".into()));
    }
    let support = plan.support();
    let total: f64 = support.iter().map(|s| s.2).sum();
    let (curves, weights) = support
        .iter()
        .map(|&(i, j, m)| (GeodesicCurve::new(mu.support()[i].clone(), nu.support()[j].clone()), m / total))
        .unzip();
    DynamicalPlan::new(curves, weights)
}
