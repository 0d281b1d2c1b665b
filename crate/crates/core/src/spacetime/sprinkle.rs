use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use super::minkowski::{causal_raw, tau_raw};
use super::{BoxRegion, Event, LorentzSpace, MinkowskiSpace};
use crate::error::{invalid, Error, Result};

/// Finite Poisson sample of a Minkowski box. Relations and `tau` are those of
/// the parent space restricted to the sample; points are addressed by index.
#[derive(Clone, Debug)]
pub struct SprinkledSpace {
    pub parent: MinkowskiSpace,
    pub region: BoxRegion,
    pub intensity: f64,
    pub seed: u64,
    points: Vec<Event>,
}

impl SprinkledSpace {
    /// Rebuild a sprinkling from stored points (used when deserializing).
    pub fn from_points(
        parent: MinkowskiSpace,
        region: BoxRegion,
        intensity: f64,
        seed: u64,
        points: Vec<Event>,
    ) -> Result<Self> {
        for p in &points {
            parent.check(p)?;
        }
        Ok(SprinkledSpace { parent, region, intensity, seed, points })
    }

    pub fn points(&self) -> &[Event] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Event {
        &self.points[i]
    }
}

/// Poisson sprinkling of `region` at the given intensity, deterministic in `seed`.
pub fn sprinkle(parent: &MinkowskiSpace, region: &BoxRegion, intensity: f64, seed: u64) -> Result<SprinkledSpace> {
    if !(intensity > 0.0 && intensity.is_finite()) {
        return Err(invalid("intensity", format!("must be positive, got {intensity}")));
    }
    if region.dim() != parent.dim() {
        return Err(Error::DimensionMismatch { expected: parent.dim(), got: region.dim() });
    }
    let vol = region.volume();
    if vol <= 0.0 {
        return Err(Error::EmptyRegion);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poisson = Poisson::new(intensity * vol).map_err(|e| invalid("intensity", e.to_string()))?;
    let count = poisson.sample(&mut rng) as usize;
    let points = (0..count).map(|_| region.sample(&mut rng)).collect();
    Ok(SprinkledSpace { parent: parent.clone(), region: region.clone(), intensity, seed, points })
}

impl LorentzSpace for SprinkledSpace {
    type Point = usize;

    fn distance(&self, x: &usize, y: &usize) -> f64 {
        self.points[*x].euclidean_distance(&self.points[*y])
    }

    fn causal(&self, x: &usize, y: &usize) -> bool {
        causal_raw(self.points[*x].coords(), self.points[*y].coords())
    }

    fn tau(&self, x: &usize, y: &usize) -> f64 {
        tau_raw(self.points[*x].coords(), self.points[*y].coords())
    }
}
