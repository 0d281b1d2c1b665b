use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DynamicalPlan, GeodesicCurve};
use crate::error::{invalid, Error, Result};
use crate::measures::{entropy, Grid, GridMeasure, ReferenceMeasure};
use crate::spacetime::minkowski::tau_raw;
use crate::spacetime::{BoxRegion, Event, MinkowskiSpace};

/// Affine displacement `T_t(x) = c + t v + (1 + rate t)(x - c)`.
///
/// Every trajectory is a straight segment, so the induced curve of measures
/// is obtained by evaluating the dynamical plan of the pairs `(x, T_1 x)`.
/// Translations have `rate = 0`; contraction to `xbar` has centre `xbar`,
/// `v = 0` and `rate = -1`; a dilation about an apex has `v = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineFlow {
    pub center: Event,
    pub velocity: Vec<f64>,
    pub rate: f64,
}

impl AffineFlow {
    pub fn translation(v: Vec<f64>) -> Self {
        let n = v.len();
        AffineFlow { center: Event::from(vec![0.0; n]), velocity: v, rate: 0.0 }
    }

    pub fn contraction_to(target: Event) -> Self {
        let n = target.dim();
        AffineFlow { center: target, velocity: vec![0.0; n], rate: -1.0 }
    }

    pub fn dilation(apex: Event, rate: f64) -> Self {
        let n = apex.dim();
        AffineFlow { center: apex, velocity: vec![0.0; n], rate }
    }

    /// Linear scale factor `1 + rate t` at time `t`.
    pub fn scale(&self, t: f64) -> f64 {
        1.0 + self.rate * t
    }

    pub fn apply(&self, x: &Event, t: f64) -> Event {
        let s = self.scale(t);
        Event::from(
            x.coords()
                .iter()
                .zip(self.center.coords())
                .zip(&self.velocity)
                .map(|((xi, ci), vi)| ci + t * vi + s * (xi - ci))
                .collect::<Vec<_>>(),
        )
    }

    fn apply_box(&self, b: &BoxRegion, t: f64) -> BoxRegion {
        let lo = self.apply(&Event::from(b.lo.clone()), t);
        let hi = self.apply(&Event::from(b.hi.clone()), t);
        let (lo, hi): (Vec<f64>, Vec<f64>) =
            lo.coords().iter().zip(hi.coords()).map(|(a, b)| (a.min(*b), a.max(*b))).unzip();
        BoxRegion { lo, hi }
    }
}

/// Where intermediate measures are re-binned.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rebinning {
    /// The image of the bounding box of the charged cells, at the source
    /// resolution.
    Adapted,
    /// A fixed target grid; every transported cell is assigned to the cell
    /// containing its transported centre.
    Fixed(Grid),
}

/// Sampled `t -> Ent(mu_t | m)` along a geodesic of measures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyCurve {
    pub t: Vec<f64>,
    #[serde(with = "crate::document::extended_float_vec")]
    pub entropy: Vec<f64>,
    /// Exact values `Ent(mu_0) - n log(1 + rate t)` of the affine flow.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::document::extended_float_opt_vec")]
    pub analytic: Option<Vec<f64>>,
    /// `||tau||_{L^2(pi)}` of the generating plan.
    pub tau_l2: f64,
    pub dimension: usize,
}

impl EntropyCurve {
    pub fn from_samples(t: Vec<f64>, entropy: Vec<f64>, tau_l2: f64, dimension: usize) -> Result<Self> {
        if t.len() != entropy.len() {
            return Err(invalid("entropy", "one entropy value per time is required"));
        }
        Ok(EntropyCurve { t, entropy, analytic: None, tau_l2, dimension })
    }

    /// Grid spacing if the times are uniformly spaced.
    pub fn uniform_step(&self) -> Result<f64> {
        if self.t.len() < 2 {
            return Err(Error::NonUniformGrid);
        }
        let h = self.t[1] - self.t[0];
        let ok = h > 0.0 && self.t.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.max(1.0));
        if ok {
            Ok(h)
        } else {
            Err(Error::NonUniformGrid)
        }
    }

    /// Largest relative deviation of the numeric from the analytic curve of
    /// `U_N = exp(-e/N)` over times `t <= t_max`.
    pub fn max_relative_deviation_un(&self, n: f64, t_max: f64) -> Option<f64> {
        let analytic = self.analytic.as_ref()?;
        let mut worst: f64 = 0.0;
        for ((t, e), a) in self.t.iter().zip(&self.entropy).zip(analytic) {
            if *t <= t_max && a.is_finite() {
                let (u, ua) = ((-e / n).exp(), (-a / n).exp());
                worst = worst.max((u - ua).abs() / ua);
            }
        }
        Some(worst)
    }

    /// Writes `(t, entropy, analytic)` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "entropy", "analytic_entropy"])?;
        for (k, (t, e)) in self.t.iter().zip(&self.entropy).enumerate() {
            let a = self.analytic.as_ref().map(|a| a[k].to_string()).unwrap_or_default();
            w.write_record(&[t.to_string(), e.to_string(), a])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// The atomic dynamical plan pairing each charged cell centre `x` with `T_1 x`.
pub fn flow_plan(mu0: &GridMeasure, flow: &AffineFlow) -> Result<DynamicalPlan<Event>> {
    let (curves, weights) = mu0
        .support()
        .map(|i| {
            let x = mu0.grid.cell_center(i);
            let y = flow.apply(&x, 1.0);
            (GeodesicCurve::new(x, y), mu0.masses()[i])
        })
        .unzip();
    DynamicalPlan::new(curves, weights)
}

/// `||tau||_{L^2}` of the pairing `x -> T_{t1}(T_{t0}^{-1} ...)`, evaluated
/// on the charged cell centres between times `t0` and `t1`.
pub fn flow_tau_l2(mu0: &GridMeasure, flow: &AffineFlow, t0: f64, t1: f64) -> f64 {
    mu0.support()
        .map(|i| {
            let x = mu0.grid.cell_center(i);
            let a = flow.apply(&x, t0);
            let b = flow.apply(&x, t1);
            mu0.masses()[i] * tau_raw(a.coords(), b.coords()).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

fn charged_bbox(mu: &GridMeasure) -> (BoxRegion, Vec<usize>) {
    let n = mu.grid.dim();
    let mut lo = vec![usize::MAX; n];
    let mut hi = vec![0; n];
    for i in mu.support() {
        for (k, ix) in mu.grid.multi_index(i).into_iter().enumerate() {
            lo[k] = lo[k].min(ix);
            hi[k] = hi[k].max(ix);
        }
    }
    let counts: Vec<usize> = lo.iter().zip(&hi).map(|(a, b)| b - a + 1).collect();
    let region = BoxRegion {
        lo: (0..n).map(|k| mu.grid.region.lo[k] + lo[k] as f64 * mu.grid.spacing(k)).collect(),
        hi: (0..n).map(|k| mu.grid.region.lo[k] + (hi[k] + 1) as f64 * mu.grid.spacing(k)).collect(),
    };
    (region, counts)
}

/// Pushes `mu0` along `flow` to time `t` and re-bins it.
pub fn push_forward(
    mu0: &GridMeasure,
    flow: &AffineFlow,
    t: f64,
    rebinning: &Rebinning,
) -> Result<Option<GridMeasure>> {
    if flow.scale(t) <= 0.0 {
        // collapsed onto a point: no density
        return Ok(None);
    }
    let target = match rebinning {
        Rebinning::Adapted => {
            let (bbox, counts) = charged_bbox(mu0);
            Grid::new(flow.apply_box(&bbox, t), counts)?
        }
        Rebinning::Fixed(g) => g.clone(),
    };
    let mut masses = vec![0.0; target.n_cells()];
    for i in mu0.support() {
        let y = flow.apply(&mu0.grid.cell_center(i), t);
        let cell = target.cell_of(y.coords()).ok_or_else(|| {
            Error::GridMismatch(format!("transported mass at {:?} leaves the target grid", y.coords()))
        })?;
        masses[cell] += mu0.masses()[i];
    }
    let total: f64 = masses.iter().sum();
    masses.iter_mut().for_each(|p| *p /= total);
    Ok(Some(GridMeasure::from_masses(target, masses)?))
}

/// Entropy along the flow at the requested times, relative to Lebesgue
/// measure, with the exact Jacobian curve attached.
pub fn geodesic_entropy_curve(
    space: &MinkowskiSpace,
    mu0: &GridMeasure,
    flow: &AffineFlow,
    times: &[f64],
    rebinning: &Rebinning,
) -> Result<EntropyCurve> {
    let n = space.dim();
    if mu0.grid.dim() != n || flow.center.dim() != n || flow.velocity.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mu0.grid.dim() });
    }
    let e0 = entropy(mu0, &ReferenceMeasure::lebesgue(&mu0.grid))?.value();
    let entropy_values: Vec<f64> = times
        .par_iter()
        .map(|&t| {
            Ok(match push_forward(mu0, flow, t, rebinning)? {
                Some(mu) => entropy(&mu, &ReferenceMeasure::lebesgue(&mu.grid))?.value(),
                None => f64::INFINITY,
            })
        })
        .collect::<Result<_>>()?;
    let analytic = times
        .iter()
        .map(|&t| {
            let s = flow.scale(t);
            if s <= 0.0 {
                f64::INFINITY
            } else {
                e0 - n as f64 * s.ln()
            }
        })
        .collect();
    Ok(EntropyCurve {
        t: times.to_vec(),
        entropy: entropy_values,
        analytic: Some(analytic),
        tau_l2: flow_tau_l2(mu0, flow, 0.0, 1.0),
        dimension: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn square(n: usize) -> GridMeasure {
        let g = Grid::square(BoxRegion::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap(), n).unwrap();
        GridMeasure::uniform(g).unwrap()
    }

    #[test]
    fn translation_keeps_entropy() {
        let m = MinkowskiSpace::new(1);
        let mu = square(32);
        let flow = AffineFlow::translation(vec![2.0, 0.5]);
        let c = geodesic_entropy_curve(&m, &mu, &flow, &[0.0, 0.3, 0.7, 1.0], &Rebinning::Adapted).unwrap();
        for e in &c.entropy {
            assert_abs_diff_eq!(*e, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn contraction_follows_jacobian() {
        let m = MinkowskiSpace::new(1);
        let mu = square(64);
        let flow = AffineFlow::contraction_to(Event::from([3.0, 0.0]));
        let times: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let c = geodesic_entropy_curve(&m, &mu, &flow, &times, &Rebinning::Adapted).unwrap();
        let analytic = c.analytic.clone().unwrap();
        for k in 0..10 {
            assert_abs_diff_eq!(c.entropy[k], -2.0 * (1.0 - times[k]).ln(), epsilon = 1e-9);
            assert_abs_diff_eq!(c.entropy[k], analytic[k], epsilon = 1e-9);
        }
        assert_eq!(c.entropy[10], f64::INFINITY);
    }

    #[test]
    fn fixed_grid_rebinning_is_close() {
        let m = MinkowskiSpace::new(1);
        let mu = square(64);
        let flow = AffineFlow::dilation(Event::from([-2.0, 0.0]), 0.3);
        // target cells are coarser than the source cells so that none stays empty
        let target = Grid::square(BoxRegion::new(vec![-1.0, -1.0], vec![1.5, 1.0]).unwrap(), 50).unwrap();
        let c = geodesic_entropy_curve(&m, &mu, &flow, &[0.0, 0.5, 1.0], &Rebinning::Fixed(target)).unwrap();
        let a = c.analytic.unwrap();
        for k in 0..3 {
            assert!((c.entropy[k] - a[k]).abs() < 0.1, "{} vs {}", c.entropy[k], a[k]);
        }
    }

    #[test]
    fn non_uniform_times_are_detected() {
        let c = EntropyCurve::from_samples(vec![0.0, 0.1, 0.3], vec![0.0; 3], 1.0, 2).unwrap();
        assert_eq!(c.uniform_step(), Err(Error::NonUniformGrid));
    }
}
