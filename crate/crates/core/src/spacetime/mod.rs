//! Causal-metric structures: events, the [`LorentzSpace`] interface and its
//! concrete realizations (flat Minkowski space, weighted causal DAGs and
//! Poisson sprinklings).

mod dag;
pub(crate) mod minkowski;
mod sprinkle;
mod validate;

pub use dag::{CausalDagSpace, DagEdge, DagMetric};
pub use minkowski::{minkowski_tau, MinkowskiSpace};
pub use sprinkle::{sprinkle, SprinkledSpace};
pub use validate::{validate_prelength, ValidationReport, Violation, ViolationKind};

use std::fmt::Debug;

use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};

/// A point of a continuum space, stored as `(t, x_1, ..., x_d)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event(SmallVec<[f64; 4]>);

impl Event {
    pub fn new(coords: &[f64]) -> Self {
        Event(SmallVec::from_slice(coords))
    }

    /// Event with the given time and spatial coordinates.
    pub fn from_parts(t: f64, spatial: &[f64]) -> Self {
        let mut v = SmallVec::with_capacity(spatial.len() + 1);
        v.push(t);
        v.extend_from_slice(spatial);
        Event(v)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    /// Total spacetime dimension `n = d + 1`.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> &[f64] {
        &self.0[1..]
    }

    /// `(1 - t) self + t other`.
    pub fn lerp(&self, other: &Event, t: f64) -> Event {
        Event(self.0.iter().zip(other.0.iter()).map(|(a, b)| (1.0 - t) * a + t * b).collect())
    }

    pub fn translate(&self, v: &[f64]) -> Event {
        Event(self.0.iter().zip(v).map(|(a, b)| a + b).collect())
    }

    pub fn euclidean_distance(&self, other: &Event) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

impl From<Vec<f64>> for Event {
    fn from(v: Vec<f64>) -> Self {
        Event(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[f64; N]> for Event {
    fn from(v: [f64; N]) -> Self {
        Event::new(&v)
    }
}

/// Axis-aligned box in event coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxRegion {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.is_empty() {
            return Err(Error::EmptyRegion);
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a.is_finite() && b.is_finite())) {
            return Err(invalid("region", "box corners must be finite"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| b <= a) {
            return Err(Error::EmptyRegion);
        }
        Ok(BoxRegion { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (a, b))| *v >= *a && *v <= *b)
    }

    pub fn center(&self) -> Event {
        Event(self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)).collect())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Event {
        Event(self.lo.iter().zip(&self.hi).map(|(a, b)| a + (b - a) * rng.random::<f64>()).collect())
    }

    /// All `2^n` corners.
    pub fn corners(&self) -> Vec<Event> {
        let n = self.dim();
        (0..1usize << n)
            .map(|mask| Event((0..n).map(|k| if mask >> k & 1 == 1 { self.hi[k] } else { self.lo[k] }).collect()))
            .collect()
    }
}

/// Causal-metric structure `(d, <=, <<, tau)` of a Lorentzian pre-length space.
pub trait LorentzSpace: Sync {
    type Point: Clone + Debug + PartialEq + Send + Sync;

    /// Auxiliary metric `d`.
    fn distance(&self, x: &Self::Point, y: &Self::Point) -> f64;

    /// The causal relation `x <= y`.
    fn causal(&self, x: &Self::Point, y: &Self::Point) -> bool;

    /// The chronological relation `x << y`.
    fn chronological(&self, x: &Self::Point, y: &Self::Point) -> bool {
        self.tau(x, y) > 0.0
    }

    /// Time separation; zero unless `x <= y`.
    fn tau(&self, x: &Self::Point, y: &Self::Point) -> f64;

    /// Point at parameter `t` on a geodesic from `x` to `y`, when the space
    /// can evaluate geodesics.
    fn geodesic_point(&self, _x: &Self::Point, _y: &Self::Point, _t: f64) -> Option<Self::Point> {
        None
    }

    fn has_geodesics(&self) -> bool {
        false
    }
}

/// `tau`-length of a causal chain: the sum of `tau` over consecutive pairs.
pub fn tau_length<S: LorentzSpace>(space: &S, chain: &[S::Point]) -> Result<f64> {
    let mut total = 0.0;
    for (i, w) in chain.windows(2).enumerate() {
        if !space.causal(&w[0], &w[1]) {
            return Err(Error::NonCausalChain(i, i + 1));
        }
        total += space.tau(&w[0], &w[1]);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn straight_chain_is_additive() {
        let m = MinkowskiSpace::new(1);
        let a = Event::from([0.0, 0.0]);
        let b = Event::from([3.0, 1.0]);
        let chain: Vec<Event> = (0..10).map(|k| a.lerp(&b, k as f64 / 9.0)).collect();
        let len = tau_length(&m, &chain).unwrap();
        assert_abs_diff_eq!(len, m.tau(&a, &b), epsilon = 1e-12);
    }

    #[test]
    fn broken_chain_is_shorter() {
        let m = MinkowskiSpace::new(1);
        let chain = [Event::from([0.0, 0.0]), Event::from([1.0, 0.9]), Event::from([2.0, 0.0])];
        let len = tau_length(&m, &chain).unwrap();
        // two legs of sqrt(1 - 0.81) each
        assert_abs_diff_eq!(len, 2.0 * 0.19f64.sqrt(), epsilon = 1e-12);
        assert!(len < 2.0);
    }

    #[test]
    fn refinement_never_increases_length() {
        let m = MinkowskiSpace::new(1);
        let coarse = [Event::from([0.0, 0.0]), Event::from([2.0, 0.5]), Event::from([5.0, 0.0])];
        let fine =
            [coarse[0].clone(), Event::from([1.0, 0.6]), coarse[1].clone(), Event::from([3.5, 0.1]), coarse[2].clone()];
        assert!(tau_length(&m, &fine).unwrap() <= tau_length(&m, &coarse).unwrap() + 1e-12);
    }

    #[test]
    fn non_causal_chain_is_rejected() {
        let m = MinkowskiSpace::new(1);
        let chain = [Event::from([0.0, 0.0]), Event::from([1.0, 2.0])];
        assert_eq!(tau_length(&m, &chain), Err(Error::NonCausalChain(0, 1)));
    }

    #[test]
    fn box_rejects_degenerate_extent() {
        assert_eq!(BoxRegion::new(vec![0.0, 0.0], vec![1.0, 0.0]), Err(Error::EmptyRegion));
        assert_eq!(BoxRegion::new(vec![0.0], vec![2.0]).unwrap().volume(), 2.0);
    }
}
