use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::measures::PointMeasure;
use crate::spacetime::LorentzSpace;
use crate::tolerances::{FLOW_EPS, MARGINAL};

/// Relation a coupling is required to be concentrated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `x <= y`
    Causal,
    /// `x << y`
    Chronological,
}

/// Cost `c_ij = tau(x_i, y_j)^p` on admissible pairs; `None` marks a
/// forbidden (non-causal) pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: f64,
    entries: Vec<Option<f64>>,
    tau: Vec<f64>,
    chronological: Vec<bool>,
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid("p", format!("exponent must lie in (0, 1], got {p}")));
    }
    Ok(())
}

impl CostMatrix {
    pub fn build<S: LorentzSpace>(
        space: &S,
        mu: &PointMeasure<S::Point>,
        nu: &PointMeasure<S::Point>,
        p: f64,
    ) -> Result<Self> {
        check_exponent(p)?;
        let (rows, cols) = (mu.len(), nu.len());
        let mut entries = Vec::with_capacity(rows * cols);
        let mut tau = Vec::with_capacity(rows * cols);
        let mut chronological = Vec::with_capacity(rows * cols);
        for x in mu.support() {
            for y in nu.support() {
                let t = space.tau(x, y);
                let causal = space.causal(x, y);
                entries.push(causal.then(|| t.powf(p)));
                tau.push(if causal { t } else { 0.0 });
                chronological.push(space.chronological(x, y));
            }
        }
        Ok(CostMatrix { rows, cols, p, entries, tau, chronological })
    }

    /// Builds a cost directly from a `tau` table and admissibility mask.
    pub fn from_tau(rows: usize, cols: usize, tau: Vec<f64>, causal: Vec<bool>, p: f64) -> Result<Self> {
        check_exponent(p)?;
        if tau.len() != rows * cols || causal.len() != rows * cols {
            return Err(invalid("tau", "table size must be rows * cols"));
        }
        let entries = tau.iter().zip(&causal).map(|(t, c)| c.then(|| t.powf(p))).collect();
        let chronological = tau.iter().zip(&causal).map(|(t, c)| *c && *t > 0.0).collect();
        Ok(CostMatrix { rows, cols, p, entries, tau, chronological })
    }

    /// `c_ij`, or `None` when the pair is forbidden.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn tau(&self, i: usize, j: usize) -> f64 {
        self.tau[i * self.cols + j]
    }

    #[inline]
    pub fn is_chronological(&self, i: usize, j: usize) -> bool {
        self.chronological[i * self.cols + j]
    }

    /// Same costs with every non-chronological pair forbidden.
    pub fn restricted(&self, relation: Relation) -> CostMatrix {
        let mut out = self.clone();
        if relation == Relation::Chronological {
            for (e, c) in out.entries.iter_mut().zip(&self.chronological) {
                if !c {
                    *e = None;
                }
            }
        }
        out
    }
}

/// Transport plan between two finitely supported measures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CausalCoupling {
    pub rows: usize,
    pub cols: usize,
    mass: Vec<f64>,
    /// No mass on forbidden pairs.
    pub causal: bool,
    /// All mass on chronological pairs.
    pub timelike: bool,
    /// Produced by an exact maximization.
    pub optimal: bool,
}

impl CausalCoupling {
    pub fn new(rows: usize, cols: usize, mass: Vec<f64>, cost: &CostMatrix) -> Result<Self> {
        if mass.len() != rows * cols || cost.rows != rows || cost.cols != cols {
            return Err(invalid("mass", "plan and cost shapes differ"));
        }
        let mut causal = true;
        let mut timelike = true;
        for i in 0..rows {
            for j in 0..cols {
                if mass[i * cols + j] > FLOW_EPS {
                    causal &= cost.get(i, j).is_some();
                    timelike &= cost.is_chronological(i, j);
                }
            }
        }
        Ok(CausalCoupling { rows, cols, mass, causal, timelike, optimal: false })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mass[i * self.cols + j]
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    /// Pairs carrying mass, in row-major order.
    pub fn support(&self) -> Vec<(usize, usize, f64)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let m = self.get(i, j);
                (m > FLOW_EPS).then_some((i, j, m))
            })
            .collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).sum()).collect()
    }

    /// Whether the marginals reproduce `a` and `b` within tolerance.
    pub fn has_marginals(&self, a: &[f64], b: &[f64]) -> bool {
        let close =
            |x: &[f64], y: &[f64]| x.len() == y.len() && x.iter().zip(y).all(|(u, v)| (u - v).abs() <= MARGINAL);
        close(&self.row_sums(), a) && close(&self.col_sums(), b)
    }

    /// `sum c_ij pi_ij`, `-inf` if mass sits on a forbidden pair.
    pub fn objective(&self, cost: &CostMatrix) -> f64 {
        let mut total = 0.0;
        for (i, j, m) in self.support() {
            match cost.get(i, j) {
                Some(c) => total += c * m,
                None => return f64::NEG_INFINITY,
            }
        }
        total
    }

    /// `||tau||_{L^2(pi)}`.
    pub fn tau_l2(&self, cost: &CostMatrix) -> f64 {
        self.support().iter().map(|&(i, j, m)| cost.tau(i, j).powi(2) * m).sum::<f64>().sqrt()
    }

    /// Sparse `(i, j, mass)` triplets.
    pub fn write_triplets_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "j", "mass"])?;
        for (i, j, m) in self.support() {
            w.write_record(&[i.to_string(), j.to_string(), m.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
