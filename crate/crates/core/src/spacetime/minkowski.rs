use serde::{Deserialize, Serialize};

use super::{BoxRegion, Event, LorentzSpace};
use crate::error::{Error, Result};

/// Flat Minkowski space `R^{d,1}` with signature `(-, +, ..., +)`.
///
/// The auxiliary metric `d` is the Euclidean distance of the coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiSpace {
    spatial_dim: usize,
    /// Optional sampling box.
    pub bounds: Option<BoxRegion>,
}

impl MinkowskiSpace {
    pub fn new(spatial_dim: usize) -> Self {
        assert!(spatial_dim >= 1, "Minkowski space needs at least one spatial dimension");
        MinkowskiSpace { spatial_dim, bounds: None }
    }

    pub fn with_bounds(spatial_dim: usize, bounds: BoxRegion) -> Result<Self> {
        if bounds.dim() != spatial_dim + 1 {
            return Err(Error::DimensionMismatch { expected: spatial_dim + 1, got: bounds.dim() });
        }
        Ok(MinkowskiSpace { spatial_dim, bounds: Some(bounds) })
    }

    pub fn spatial_dim(&self) -> usize {
        self.spatial_dim
    }

    /// Spacetime dimension `n = d + 1`.
    pub fn dim(&self) -> usize {
        self.spatial_dim + 1
    }

    pub fn check(&self, x: &Event) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        Ok(())
    }
}

/// `(dt, dt^2 - |dx|^2)` for the displacement from `x` to `y`.
#[inline]
pub(crate) fn interval(x: &[f64], y: &[f64]) -> (f64, f64) {
    let dt = y[0] - x[0];
    let mut q = dt * dt;
    for k in 1..x.len() {
        let d = y[k] - x[k];
        q -= d * d;
    }
    (dt, q)
}

#[inline]
pub(crate) fn tau_raw(x: &[f64], y: &[f64]) -> f64 {
    let (dt, q) = interval(x, y);
    if dt > 0.0 && q > 0.0 {
        q.sqrt()
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn causal_raw(x: &[f64], y: &[f64]) -> bool {
    let (dt, q) = interval(x, y);
    dt >= 0.0 && q >= 0.0
}

/// Closed-form Minkowski time separation with a dimension check.
pub fn minkowski_tau(x: &Event, y: &Event) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), got: y.dim() });
    }
    if x.dim() < 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: x.dim() });
    }
    Ok(tau_raw(x.coords(), y.coords()))
}

impl LorentzSpace for MinkowskiSpace {
    type Point = Event;

    fn distance(&self, x: &Event, y: &Event) -> f64 {
        x.euclidean_distance(y)
    }

    fn causal(&self, x: &Event, y: &Event) -> bool {
        debug_assert_eq!(x.dim(), self.dim());
        causal_raw(x.coords(), y.coords())
    }

    fn chronological(&self, x: &Event, y: &Event) -> bool {
        tau_raw(x.coords(), y.coords()) > 0.0
    }

    fn tau(&self, x: &Event, y: &Event) -> f64 {
        debug_assert_eq!(x.dim(), self.dim());
        tau_raw(x.coords(), y.coords())
    }

    fn geodesic_point(&self, x: &Event, y: &Event, t: f64) -> Option<Event> {
        Some(x.lerp(y, t))
    }

    fn has_geodesics(&self) -> bool {
        true
    }
}
