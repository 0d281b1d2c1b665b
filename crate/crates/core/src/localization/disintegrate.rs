//! Ray disintegration of the reference measure along maximal rays of `tau_V`,
//! the one-dimensional density comparison, and the coarea identity.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::achronal::AchronalSet;
use crate::comparison::StarShapedRegion;
use crate::curvature::s_kappa;
use crate::error::{invalid, Error, Result};
use crate::rng;
use crate::spacetime::{BoxRegion, Event, MinkowskiSpace};
use crate::tolerances::MCP_BINNING;

/// Bounded region of spacetime sampled by the disintegration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum SampleRegion {
    Box(BoxRegion),
    Star(StarShapedRegion),
}

impl SampleRegion {
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            SampleRegion::Box(b) => b.contains(x),
            SampleRegion::Star(s) => s.contains(x),
        }
    }

    pub fn bounding_box(&self) -> Result<BoxRegion> {
        match self {
            SampleRegion::Box(b) => Ok(b.clone()),
            SampleRegion::Star(s) => s.bounding_box(),
        }
    }
}

/// Sampling and binning controls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisintegrationParams {
    /// Lattice cells per axis; each cell holds one jittered sample.
    pub resolution: usize,
    /// Bins per varying coordinate of the ray label.
    pub ray_bins: usize,
    /// Maximum number of `tau_V` bins along a ray.
    pub tau_bins: usize,
    /// Minimum samples per `tau_V` bin.
    pub min_per_bin: usize,
    pub seed: u64,
}

impl Default for DisintegrationParams {
    fn default() -> Self {
        DisintegrationParams { resolution: 512, ray_bins: 32, tau_bins: 10, min_per_bin: 200, seed: 0 }
    }
}

/// One extracted ray: a bundle of nearby maximal rays with its binned density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub id: usize,
    /// Mean footpoint on `V`.
    pub footpoint: Event,
    /// Mean unit future-directed velocity.
    pub direction: Event,
    /// Range `(a, b)` of `tau_V` on the ray.
    pub range: (f64, f64),
    /// Quotient weight `q_alpha`.
    pub weight: f64,
    /// Density `h_alpha` per `tau_V` bin, normalized so that
    /// `sum_alpha q_alpha int h_alpha` is the disintegrated mass.
    pub density: Vec<f64>,
    /// Samples per bin.
    pub counts: Vec<usize>,
    pub samples: usize,
}

impl Ray {
    pub fn bin_width(&self) -> f64 {
        (self.range.1 - self.range.0) / self.density.len() as f64
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        let w = self.bin_width();
        (0..self.density.len()).map(|i| self.range.0 + (i as f64 + 0.5) * w).collect()
    }

    /// Point of the ray at `tau_V = s`.
    pub fn point(&self, s: f64) -> Event {
        let y = self.footpoint.coords();
        let u = self.direction.coords();
        Event::new(&y.iter().zip(u).map(|(a, b)| a + s * b).collect::<Vec<_>>())
    }

    /// `h_alpha(s)`, piecewise constant on bins, zero outside the range.
    pub fn density_at(&self, s: f64) -> f64 {
        if s < self.range.0 || s > self.range.1 || self.density.is_empty() {
            return 0.0;
        }
        let i = ((s - self.range.0) / self.bin_width()) as usize;
        self.density[i.min(self.density.len() - 1)]
    }
}

/// Finite sampling surrogate of the disintegration of `m` restricted to `I+(V)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayDecomposition {
    pub rays: Vec<Ray>,
    /// Mass of the sampled region inside `I+(V)`.
    pub sampled_mass: f64,
    /// Mass of samples with ambiguous footpoints, excluded from the rays.
    pub excluded_mass: f64,
    /// `sum_alpha q_alpha int h_alpha`.
    pub reconstructed_mass: f64,
    /// `|reconstructed - sampled| / sampled`.
    pub mass_balance: f64,
}

struct Sample {
    x: Event,
    tau: f64,
    foot: Event,
}

fn lattice_samples(region: &SampleRegion, resolution: usize, seed: u64) -> Result<(Vec<Event>, f64)> {
    if resolution == 0 {
        return Err(invalid("resolution", "must be positive"));
    }
    let bbox = region.bounding_box()?;
    let d = bbox.dim();
    let widths: Vec<f64> = (0..d).map(|k| (bbox.hi[k] - bbox.lo[k]) / resolution as f64).collect();
    let cells_per_row = resolution.pow(d as u32 - 1);
    let rows: Vec<Vec<Event>> = (0..resolution)
        .into_par_iter()
        .map(|row| {
            let mut rng = rng::stream(seed, row as u64);
            let mut out = Vec::new();
            let mut x = vec![0.0; d];
            for cell in 0..cells_per_row {
                x[0] = bbox.lo[0] + (row as f64 + rng.random::<f64>()) * widths[0];
                let mut rest = cell;
                for k in (1..d).rev() {
                    x[k] = bbox.lo[k] + ((rest % resolution) as f64 + rng.random::<f64>()) * widths[k];
                    rest /= resolution;
                }
                if region.contains(&x) {
                    out.push(Event::new(&x));
                }
            }
            out
        })
        .collect();
    let cell_mass = bbox.volume() / (resolution as f64).powi(d as i32);
    Ok((rows.into_iter().flatten().collect(), cell_mass))
}

/// Partition the sampled part of `I+(V)` inside `region` into ray bundles and
/// bin the reference measure along each bundle by `tau_V`.
pub fn disintegrate(
    space: &MinkowskiSpace,
    v: &AchronalSet,
    region: &SampleRegion,
    params: &DisintegrationParams,
) -> Result<RayDecomposition> {
    if params.ray_bins == 0 || params.tau_bins == 0 {
        return Err(invalid("bins", "must be positive"));
    }
    let (points, cell_mass) = lattice_samples(region, params.resolution, params.seed)?;
    if let Some(p) = points.first() {
        space.check(p)?;
    }
    let projected: Vec<Option<(Event, f64, Option<Event>)>> = points
        .into_par_iter()
        .map(|x| -> Result<_> {
            let p = v.project(space, &x)?;
            if p.tau <= 0.0 {
                return Ok(None);
            }
            Ok(Some((x, p.tau, if p.ambiguous { None } else { p.footpoint })))
        })
        .collect::<Result<_>>()?;
    let future: Vec<_> = projected.into_iter().flatten().collect();
    let sampled_mass = future.len() as f64 * cell_mass;
    let mut excluded = 0usize;
    let samples: Vec<Sample> = future
        .into_iter()
        .filter_map(|(x, tau, foot)| match foot {
            Some(foot) => Some(Sample { x, tau, foot }),
            None => {
                excluded += 1;
                None
            }
        })
        .collect();

    let d = space.spatial_dim();
    let label = |s: &Sample| -> Vec<f64> {
        let dt = s.x.time() - s.foot.time();
        let mut l = s.foot.spatial().to_vec();
        l.extend(s.x.spatial().iter().zip(s.foot.spatial()).map(|(a, b)| (a - b) / dt));
        l
    };
    let labels: Vec<Vec<f64>> = samples.iter().map(label).collect();
    let mut lo = vec![f64::INFINITY; 2 * d];
    let mut hi = vec![f64::NEG_INFINITY; 2 * d];
    for l in &labels {
        for k in 0..2 * d {
            lo[k] = lo[k].min(l[k]);
            hi[k] = hi[k].max(l[k]);
        }
    }
    let mut bundles: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        let key = (0..2 * d)
            .map(|k| {
                let span = hi[k] - lo[k];
                if span < LABEL_RESOLUTION {
                    0
                } else {
                    (((l[k] - lo[k]) / span * params.ray_bins as f64) as usize).min(params.ray_bins - 1)
                }
            })
            .collect();
        bundles.entry(key).or_default().push(i);
    }

    let total = samples.len() as f64 * cell_mass;
    let n = space.dim();
    let mut rays = Vec::with_capacity(bundles.len());
    for members in bundles.values() {
        let mut foot = vec![0.0; n];
        let mut vel = vec![0.0; n];
        let (mut a, mut b) = (f64::INFINITY, f64::NEG_INFINITY);
        for &i in members {
            let s = &samples[i];
            for k in 0..n {
                foot[k] += s.foot.coords()[k];
                vel[k] += (s.x.coords()[k] - s.foot.coords()[k]) / s.tau;
            }
            a = a.min(s.tau);
            b = b.max(s.tau);
        }
        let count = members.len() as f64;
        foot.iter_mut().for_each(|c| *c /= count);
        let norm = (vel[0] * vel[0] - vel[1..].iter().map(|v| v * v).sum::<f64>()).sqrt();
        vel.iter_mut().for_each(|c| *c /= norm);
        let bins = params.tau_bins.min(members.len() / params.min_per_bin.max(1)).max(1);
        let width = if b > a { (b - a) / bins as f64 } else { 1.0 };
        let mut counts = vec![0usize; bins];
        for &i in members {
            counts[(((samples[i].tau - a) / width) as usize).min(bins - 1)] += 1;
        }
        let mass: Vec<f64> = counts.iter().map(|&c| c as f64 * cell_mass).collect();
        let weight = count * cell_mass / total;
        let density = mass.iter().map(|m| m / width / weight).collect();
        rays.push(Ray {
            id: rays.len(),
            footpoint: Event::new(&foot),
            direction: Event::new(&vel),
            range: (a, if b > a { b } else { a + width }),
            weight,
            density,
            counts,
            samples: members.len(),
        });
    }
    let reconstructed: f64 = rays.iter().map(|r| r.weight * r.density.iter().sum::<f64>() * r.bin_width()).sum();
    let mass_balance = if sampled_mass > 0.0 { (reconstructed - sampled_mass).abs() / sampled_mass } else { 0.0 };
    Ok(RayDecomposition {
        rays,
        sampled_mass,
        excluded_mass: excluded as f64 * cell_mass,
        reconstructed_mass: reconstructed,
        mass_balance,
    })
}

impl RayDecomposition {
    /// Largest `|tau_V(g(s2)) - tau_V(g(s1)) - (s2 - s1)|` along the rays,
    /// probed at interior parameters.
    pub fn saturation_defect(&self, space: &MinkowskiSpace, v: &AchronalSet) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for ray in &self.rays {
            let (a, b) = ray.range;
            let s: Vec<f64> = (1..=5).map(|k| a + (b - a) * (0.1 + 0.15 * k as f64)).collect();
            let tv: Vec<f64> =
                s.iter().map(|&si| super::achronal::tau_v(space, v, &ray.point(si))).collect::<Result<_>>()?;
            for i in 1..s.len() {
                worst = worst.max((tv[i] - tv[i - 1] - (s[i] - s[i - 1])).abs());
            }
        }
        Ok(worst)
    }

    /// Rows `(ray, footpoint..., tau_V bin center, density)`.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        let dim = self.rays.first().map_or(0, |r| r.footpoint.dim());
        let mut header = vec!["ray".to_string()];
        header.extend((0..dim).map(|k| format!("foot{k}")));
        header.extend(["tau_v".into(), "density".into()]);
        w.write_record(&header)?;
        for ray in &self.rays {
            for (s, h) in ray.bin_centers().into_iter().zip(&ray.density) {
                let mut row = vec![ray.id.to_string()];
                row.extend(ray.footpoint.coords().iter().map(|c| c.to_string()));
                row.extend([s.to_string(), h.to_string()]);
                w.write_record(&row)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Outcome of the one-dimensional `MCP(K, N)` density comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McpReport {
    pub holds: bool,
    pub rays_checked: usize,
    /// Rays with fewer than five well-populated bins.
    pub rays_skipped: usize,
    pub pairs_checked: usize,
    /// Smallest relative margin; negative on a violation.
    pub worst_margin: f64,
    pub worst_ray: Option<usize>,
    /// `lower` or `upper`.
    pub worst_side: Option<String>,
}

/// Label coordinates varying less than this are treated as constant.
const LABEL_RESOLUTION: f64 = 1e-9;

/// Minimum number of bins for a ray to be compared.
const MIN_BINS: usize = 5;

/// Both sides of the one-dimensional comparison inequality on every pair of
/// bins of every ray, with relative binning tolerance. Bins holding fewer than
/// `min_count` samples are not compared.
pub fn mcp_density_check(decomp: &RayDecomposition, k: f64, n: f64, min_count: usize) -> Result<McpReport> {
    if !(n > 1.0 && n.is_finite()) {
        return Err(invalid("N", format!("must lie in (1, inf), got {n}")));
    }
    let kappa = k / (n - 1.0);
    let tol = MCP_BINNING;
    let mut report = McpReport {
        holds: true,
        rays_checked: 0,
        rays_skipped: 0,
        pairs_checked: 0,
        worst_margin: f64::INFINITY,
        worst_ray: None,
        worst_side: None,
    };
    let note = |margin: f64, ray: usize, side: &str, report: &mut McpReport| {
        if margin < report.worst_margin {
            report.worst_margin = margin;
            report.worst_ray = Some(ray);
            report.worst_side = Some(side.to_string());
        }
    };
    for ray in &decomp.rays {
        let usable: Vec<usize> = (0..ray.density.len()).filter(|&i| ray.counts[i] >= min_count).collect();
        if usable.len() < MIN_BINS {
            report.rays_skipped += 1;
            continue;
        }
        report.rays_checked += 1;
        let (a, b) = ray.range;
        let t = ray.bin_centers();
        for (p, &i) in usable.iter().enumerate() {
            for &j in &usable[p + 1..] {
                report.pairs_checked += 1;
                let (h0, h1) = (ray.density[i], ray.density[j]);
                if h0 <= 0.0 {
                    if h1 > 0.0 {
                        note(f64::NEG_INFINITY, ray.id, "upper", &mut report);
                    }
                    continue;
                }
                let ratio = h1 / h0;
                let lower = (s_kappa(kappa, b - t[j]) / s_kappa(kappa, b - t[i])).powf(n - 1.0);
                let upper = (s_kappa(kappa, t[j] - a) / s_kappa(kappa, t[i] - a)).powf(n - 1.0);
                note(ratio / lower - (1.0 - tol), ray.id, "lower", &mut report);
                note((1.0 + tol) - ratio / upper, ray.id, "upper", &mut report);
            }
        }
    }
    report.holds = report.worst_margin >= 0.0;
    if report.worst_margin == f64::INFINITY {
        report.worst_margin = 0.0;
    }
    Ok(report)
}

/// Direct mass of `A` against the integral of the level measures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoareaReport {
    pub direct_mass: f64,
    pub level_integral: f64,
    pub relative_error: f64,
}

/// Sub-steps per density bin when integrating the level measures.
const LEVEL_SUBSTEPS: usize = 16;

/// Compare `m(A ∩ I+(V))` from an independent sampling with
/// `int_0^inf H_t(A) dt`, where `H_t` is assembled from the ray
/// decomposition of the bounding box of `A`.
pub fn coarea_check(
    space: &MinkowskiSpace,
    v: &AchronalSet,
    a: &SampleRegion,
    params: &DisintegrationParams,
) -> Result<CoareaReport> {
    let bbox = a.bounding_box()?;
    if bbox.volume() <= 0.0 {
        return Err(Error::EmptyRegion);
    }
    let decomp = disintegrate(space, v, &SampleRegion::Box(bbox), params)?;
    let mut level_integral = 0.0;
    for ray in &decomp.rays {
        let w = ray.bin_width() / LEVEL_SUBSTEPS as f64;
        for (bin, h) in ray.density.iter().enumerate() {
            for sub in 0..LEVEL_SUBSTEPS {
                let s = ray.range.0 + bin as f64 * ray.bin_width() + (sub as f64 + 0.5) * w;
                if a.contains(ray.point(s).coords()) {
                    level_integral += ray.weight * h * w;
                }
            }
        }
    }
    let (points, cell_mass) = lattice_samples(a, params.resolution, params.seed ^ 0x9e37_79b9_7f4a_7c15)?;
    let inside: usize =
        points.par_iter().map(|x| v.project(space, x).map(|p| usize::from(p.tau > 0.0))).sum::<Result<usize>>()?;
    let direct_mass = inside as f64 * cell_mass;
    let relative_error = if direct_mass == 0.0 && level_integral == 0.0 {
        0.0
    } else {
        (direct_mass - level_integral).abs() / direct_mass.max(level_integral)
    };
    Ok(CoareaReport { direct_mass, level_integral, relative_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params() -> DisintegrationParams {
        DisintegrationParams { resolution: 256, ray_bins: 16, tau_bins: 10, min_per_bin: 100, seed: 7 }
    }

    #[test]
    fn flat_slice_has_vertical_rays_and_constant_density() {
        let m = MinkowskiSpace::new(1);
        let v = AchronalSet::flat(0.0);
        let region = SampleRegion::Box(BoxRegion::new(vec![0.0, -1.0], vec![1.0, 1.0]).unwrap());
        let d = disintegrate(&m, &v, &region, &params()).unwrap();
        assert_abs_diff_eq!(d.sampled_mass, 2.0, epsilon = 1e-9);
        assert!(d.mass_balance < 0.01);
        for ray in &d.rays {
            assert_abs_diff_eq!(ray.direction.spatial()[0], 0.0, epsilon = 1e-9);
        }
        assert!(mcp_density_check(&d, 0.0, 2.0, 100).unwrap().holds);
        assert!(d.saturation_defect(&m, &v).unwrap() < 1e-6);
    }

    #[test]
    fn point_source_density_grows_linearly() {
        let m = MinkowskiSpace::new(1);
        let v = AchronalSet::points(vec![Event::from([0.0, 0.0])]).unwrap();
        let region =
            SampleRegion::Star(StarShapedRegion::diamond(Event::from([0.0, 0.0]), Event::from([2.0, 0.0])).unwrap());
        let fine = DisintegrationParams { resolution: 512, ray_bins: 8, ..params() };
        let d = disintegrate(&m, &v, &region, &fine).unwrap();
        assert!(d.mass_balance < 0.01);
        let report = mcp_density_check(&d, 0.0, 2.0, 400).unwrap();
        assert!(report.holds, "{report:?}");
        assert!(report.rays_checked > 0);
        assert!(d.saturation_defect(&m, &v).unwrap() < 1e-6);

        let mut planted = d.clone();
        for ray in &mut planted.rays {
            ray.density = ray.bin_centers().iter().map(|s| 1.0 / s).collect();
        }
        assert!(!mcp_density_check(&planted, 0.0, 2.0, 400).unwrap().holds);
    }

    #[test]
    fn coarea_on_box_and_diamond() {
        let m = MinkowskiSpace::new(1);
        let v = AchronalSet::flat(0.0);
        let unit = SampleRegion::Box(BoxRegion::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap());
        let r = coarea_check(&m, &v, &unit, &params()).unwrap();
        assert_abs_diff_eq!(r.direct_mass, 1.0, epsilon = 1e-9);
        assert!(r.relative_error < 0.01, "{r:?}");
        let diamond =
            SampleRegion::Star(StarShapedRegion::diamond(Event::from([0.2, 0.0]), Event::from([1.2, 0.3])).unwrap());
        let r = coarea_check(&m, &v, &diamond, &params()).unwrap();
        assert!(r.relative_error < 0.01, "{r:?}");
        let below = SampleRegion::Box(BoxRegion::new(vec![-2.0, 0.0], vec![-1.0, 1.0]).unwrap());
        let r = coarea_check(&m, &v, &below, &params()).unwrap();
        assert_eq!((r.direct_mass, r.level_integral, r.relative_error), (0.0, 0.0, 0.0));
    }
}
