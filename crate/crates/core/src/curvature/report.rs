use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// Conjunction: any failure fails, otherwise any inconclusive part makes
    /// the whole inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

/// Parameters of the entropic curvature-dimension conditions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureParams {
    pub p: f64,
    pub k: f64,
    /// Dimension bound `N`; `+inf` is allowed.
    #[serde(with = "crate::document::extended_float")]
    pub n: f64,
    /// Relative tolerance on inequality margins.
    pub tol: f64,
}

impl CurvatureParams {
    pub fn new(p: f64, k: f64, n: f64) -> Result<Self> {
        let params = CurvatureParams { p, k, n, tol: 1e-9 };
        params.validate()?;
        Ok(params)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(invalid("p", format!("exponent must lie in (0, 1), got {}", self.p)));
        }
        if !(self.n > 0.0) {
            return Err(invalid("N", format!("dimension bound must be positive, got {}", self.n)));
        }
        if !self.k.is_finite() {
            return Err(invalid("K", "curvature bound must be finite"));
        }
        if !(self.tol > 0.0) {
            return Err(invalid("tol", "tolerance must be positive"));
        }
        Ok(())
    }
}

/// Outcome of a curvature certification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub verdict: Verdict,
    /// Smallest relative slack of the checked inequality; negative means violated.
    #[serde(with = "crate::document::extended_float")]
    pub margin: f64,
    /// Where the smallest slack occurred.
    pub t_star: Option<f64>,
    /// The model coefficient was infinite (`kappa theta^2 >= pi^2`).
    pub diameter_obstruction: bool,
    pub notes: Vec<String>,
    /// Echo of the inputs.
    pub inputs: serde_json::Value,
}
