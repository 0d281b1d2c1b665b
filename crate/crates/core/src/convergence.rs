//! Weak convergence diagnostic for sprinklings of increasing intensity.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng;
use crate::spacetime::{sprinkle, BoxRegion, Event, MinkowskiSpace};

/// Compactly supported test function on the ambient box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum TestFunction {
    /// Product of one-dimensional tents of half-width `radius` centred at `center`.
    Tent { center: Event, radius: f64 },
    /// The constant function 1 on the box.
    Constant,
}

impl TestFunction {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            TestFunction::Tent { center, radius } => {
                center.coords().iter().zip(x).map(|(c, v)| (1.0 - (v - c).abs() / radius).max(0.0)).product()
            }
            TestFunction::Constant => 1.0,
        }
    }

    /// Integral against Lebesgue measure on `region`; tents lie inside it.
    pub fn lebesgue_integral(&self, region: &BoxRegion) -> f64 {
        match self {
            TestFunction::Tent { center, radius } => radius.powi(center.dim() as i32),
            TestFunction::Constant => region.volume(),
        }
    }
}

/// `size` tents with centres and radii drawn from `seed`, each supported
/// inside `region`.
pub fn tent_dictionary(region: &BoxRegion, size: usize, seed: u64) -> Vec<TestFunction> {
    let mut rng = rng::stream(seed, u64::MAX);
    let min_side = region.lo.iter().zip(&region.hi).map(|(a, b)| b - a).fold(f64::INFINITY, f64::min);
    (0..size)
        .map(|_| {
            let radius = min_side * (0.1 + 0.2 * rng.random::<f64>());
            let center: Vec<f64> = region
                .lo
                .iter()
                .zip(&region.hi)
                .map(|(a, b)| a + radius + (b - a - 2.0 * radius) * rng.random::<f64>())
                .collect();
            TestFunction::Tent { center: Event::from(center), radius }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceDiagnostic {
    pub intensities: Vec<f64>,
    pub counts: Vec<usize>,
    /// `max_phi |int phi d(m_j / intensity) - int phi dm|` per level.
    pub discrepancies: Vec<f64>,
    pub dictionary_size: usize,
    /// Strictly decreasing from each level to the next.
    pub decreasing: bool,
    pub steps_decreasing: usize,
    /// Every sprinkled point embeds in the common ambient box.
    pub embeddings_isometric: bool,
    /// Reference point shared by every level.
    pub reference_point: Event,
}

/// Sprinkle the box at each intensity and measure weak discrepancy against
/// Lebesgue measure over the dictionary.
pub fn converge_diagnose(
    space: &MinkowskiSpace,
    region: &BoxRegion,
    intensities: &[f64],
    dictionary: &[TestFunction],
    seed: u64,
) -> Result<ConvergenceDiagnostic> {
    if intensities.is_empty() || dictionary.is_empty() {
        return Err(invalid("levels", "need at least one intensity and one test function"));
    }
    if intensities.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("intensities", "must be strictly increasing"));
    }
    let targets: Vec<f64> = dictionary.iter().map(|f| f.lebesgue_integral(region)).collect();
    let mut level_seeds = rng::stream(seed, 0);
    let mut counts = Vec::with_capacity(intensities.len());
    let mut discrepancies = Vec::with_capacity(intensities.len());
    let mut embedded = true;
    for &lambda in intensities {
        let sample = sprinkle(space, region, lambda, level_seeds.next_u64())?;
        if sample.is_empty() {
            return Err(Error::EmptyRegion);
        }
        embedded &= sample.points().iter().all(|p| region.contains(p.coords()));
        let worst = dictionary
            .iter()
            .zip(&targets)
            .map(|(f, &exact)| {
                let sum: f64 = sample.points().iter().map(|p| f.eval(p.coords())).sum();
                (sum / lambda - exact).abs()
            })
            .fold(0.0, f64::max);
        counts.push(sample.len());
        discrepancies.push(worst);
    }
    let steps_decreasing = discrepancies.windows(2).filter(|w| w[1] < w[0]).count();
    Ok(ConvergenceDiagnostic {
        intensities: intensities.to_vec(),
        counts,
        decreasing: steps_decreasing + 1 == discrepancies.len(),
        steps_decreasing,
        discrepancies,
        dictionary_size: dictionary.len(),
        embeddings_isometric: embedded,
        reference_point: region.center(),
    })
}
