use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::WEIGHT_SUM;

/// Finitely supported probability measure `sum_i w_i delta_{x_i}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointMeasure<P> {
    support: Vec<P>,
    weights: Vec<f64>,
}

impl<P: PartialEq> PointMeasure<P> {
    /// Checks that the weights are positive, sum to one and that the support
    /// points are distinct.
    pub fn new(support: Vec<P>, weights: Vec<f64>) -> Result<Self> {
        if support.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: support.len(), got: weights.len() });
        }
        if support.is_empty() {
            return Err(Error::DegenerateWeights("empty support".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::DegenerateWeights(format!("weight {w} is not a positive number")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM {
            return Err(Error::DegenerateWeights(format!("weights sum to {total}")));
        }
        for i in 0..support.len() {
            if support[..i].contains(&support[i]) {
                return Err(Error::DegenerateWeights(format!("support point {i} is repeated")));
            }
        }
        Ok(PointMeasure { support, weights })
    }

    /// Rescales positive weights to unit mass before validating.
    pub fn normalized(support: Vec<P>, weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::DegenerateWeights(format!("total mass {total}")));
        }
        Self::new(support, weights.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(support: Vec<P>) -> Result<Self> {
        let k = support.len();
        Self::new(support, vec![1.0 / k as f64; k])
    }

    pub fn dirac(x: P) -> Self {
        PointMeasure { support: vec![x], weights: vec![1.0] }
    }
}

impl<P> PointMeasure<P> {
    pub fn support(&self) -> &[P] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_dirac(&self) -> bool {
        self.support.len() == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, f64)> {
        self.support.iter().zip(self.weights.iter().copied())
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate(&self, mut f: impl FnMut(&P) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_weights() {
        assert!(PointMeasure::new(vec![0, 1], vec![0.5, 0.6]).is_err());
        assert!(PointMeasure::new(vec![0, 1], vec![1.0, 0.0]).is_err());
        assert!(PointMeasure::new(vec![0, 0], vec![0.5, 0.5]).is_err());
        assert!(PointMeasure::<usize>::new(vec![], vec![]).is_err());
    }

    #[test]
    fn normalizes_and_integrates() {
        let m = PointMeasure::normalized(vec![1.0, 3.0], vec![1.0, 3.0]).unwrap();
        assert_eq!(m.weights(), &[0.25, 0.75]);
        assert_eq!(m.integrate(|x| *x), 2.5);
    }
}
