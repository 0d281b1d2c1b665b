//! Achronal sets in Minkowski space, the signed time separation `tau_V`, and
//! footpoint projection.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spacetime::minkowski::tau_raw;
use crate::spacetime::{Event, LorentzSpace, MinkowskiSpace};
use crate::tolerances::{FOOTPOINT_AMBIGUITY, FOOTPOINT_BRACKET, ONE_LIPSCHITZ};

/// Achronal subset of `R^{d,1}`: a rotationally symmetric spacelike graph or
/// a finite point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum AchronalSet {
    /// The slice `{t = height}`.
    Flat { height: f64 },
    /// `{t = t_a + slope |x - x_a|}` with `|slope| < 1`. Positive slopes open
    /// to the future, negative slopes to the past.
    Cone { apex: Event, slope: f64 },
    /// `{t = t_c + sqrt(radius^2 + |x - x_c|^2)}`.
    Hyperboloid { center: Event, radius: f64 },
    /// Finite pairwise non-chronological set.
    Points(Vec<Event>),
}

/// Result of maximizing over `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    /// Signed time separation `tau_V(x)`.
    pub tau: f64,
    /// Maximizer on `V`; absent when `tau = 0`.
    pub footpoint: Option<Event>,
    /// Several maximizers agree within the ambiguity threshold.
    pub ambiguous: bool,
}

/// Seed points of the grid scan preceding golden-section refinement.
const SEEDS: usize = 64;

impl AchronalSet {
    pub fn flat(height: f64) -> Self {
        AchronalSet::Flat { height }
    }

    pub fn cone(apex: Event, slope: f64) -> Result<Self> {
        if !(slope.abs() < 1.0) {
            return Err(invalid("slope", format!("must satisfy |slope| < 1, got {slope}")));
        }
        Ok(AchronalSet::Cone { apex, slope })
    }

    pub fn hyperboloid(center: Event, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid("radius", format!("must be positive, got {radius}")));
        }
        Ok(AchronalSet::Hyperboloid { center, radius })
    }

    /// Finite set, checked to be pairwise non-chronological.
    pub fn points(points: Vec<Event>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyRegion);
        }
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                if tau_raw(a.coords(), b.coords()) > 0.0 || tau_raw(b.coords(), a.coords()) > 0.0 {
                    return Err(invalid("points", "set is not achronal"));
                }
            }
        }
        Ok(AchronalSet::Points(points))
    }

    /// Height of the graph over the spatial point `s`.
    pub fn height(&self, s: &[f64]) -> Option<f64> {
        match self {
            AchronalSet::Flat { height } => Some(*height),
            AchronalSet::Cone { apex, slope } => Some(apex.time() + slope * dist(s, apex.spatial())),
            AchronalSet::Hyperboloid { center, radius } => {
                let r = dist(s, center.spatial());
                Some(center.time() + (radius * radius + r * r).sqrt())
            }
            AchronalSet::Points(_) => None,
        }
    }

    /// Largest `|grad f|/sqrt(1 - |grad f|^2)` over spatial points within the
    /// given box: the spatial drift per unit proper time of normal rays.
    pub fn normal_drift(&self, lo: &[f64], hi: &[f64]) -> Option<f64> {
        let slope = match self {
            AchronalSet::Flat { .. } => 0.0,
            AchronalSet::Cone { slope, .. } => slope.abs(),
            AchronalSet::Hyperboloid { center, radius } => {
                let c = center.spatial();
                let far: f64 =
                    (0..c.len()).map(|k| (lo[k] - c[k]).abs().max((hi[k] - c[k]).abs()).powi(2)).sum::<f64>().sqrt();
                far / (radius * radius + far * far).sqrt()
            }
            AchronalSet::Points(_) => return None,
        };
        Some(slope / (1.0 - slope * slope).sqrt())
    }

    fn check_dim(&self, space: &MinkowskiSpace) -> Result<()> {
        let n = space.dim();
        let probe = match self {
            AchronalSet::Flat { .. } => return Ok(()),
            AchronalSet::Cone { apex, .. } => apex,
            AchronalSet::Hyperboloid { center, .. } => center,
            AchronalSet::Points(p) => &p[0],
        };
        if probe.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: probe.dim() });
        }
        Ok(())
    }

    /// Signed supremum together with the maximizer.
    pub fn project(&self, space: &MinkowskiSpace, x: &Event) -> Result<Projection> {
        space.check(x)?;
        self.check_dim(space)?;
        match self {
            AchronalSet::Points(points) => Ok(project_points(points, x)),
            _ => self.project_graph(x),
        }
    }

    fn project_graph(&self, x: &Event) -> Result<Projection> {
        let xs = x.spatial();
        let f0 = self.height(xs).expect("graph");
        let side = if x.time() > f0 {
            1.0
        } else if x.time() < f0 {
            -1.0
        } else {
            return Ok(Projection { tau: 0.0, footpoint: None, ambiguous: false });
        };
        // The maximizer lies on the line through the symmetry center and x.
        let center: Vec<f64> = match self {
            AchronalSet::Flat { .. } => xs.to_vec(),
            AchronalSet::Cone { apex, .. } => apex.spatial().to_vec(),
            AchronalSet::Hyperboloid { center, .. } => center.spatial().to_vec(),
            AchronalSet::Points(_) => unreachable!(),
        };
        let profile = |rho: f64| self.profile(rho);
        let offset: Vec<f64> = xs.iter().zip(&center).map(|(a, b)| a - b).collect();
        let rx = offset.iter().map(|v| v * v).sum::<f64>().sqrt();
        let dir: Vec<f64> = if rx > 0.0 {
            offset.iter().map(|v| v / rx).collect()
        } else {
            let mut e = vec![0.0; offset.len()];
            e[0] = 1.0;
            e
        };
        let bound = self.bracket(x, side, rx)?;
        let point = |rho: f64| -> Event {
            Event::from_parts(profile(rho).0, &center.iter().zip(&dir).map(|(c, d)| c + rho * d).collect::<Vec<_>>())
        };
        let g = |rho: f64| -> f64 {
            let y = point(rho);
            if side > 0.0 {
                tau_raw(y.coords(), x.coords())
            } else {
                tau_raw(x.coords(), y.coords())
            }
        };
        // Derivative of the squared interval along the line; it changes sign
        // at the maximizer with full floating-point resolution.
        let slope = |rho: f64| (rx - rho) - (x.time() - profile(rho).0) * profile(rho).1;
        // The point of V straight below or above x is always chronologically
        // related to it; a local scan around it resolves thin windows.
        let dt = (x.time() - profile(rx).0).abs();
        let lip = profile(rx).1.abs();
        let local = (dt * (2.0 + 2.0 * lip / (1.0 - lip * lip).sqrt())).min(bound);
        let (rho, value, ambiguous) = maximize(&g, &[(-bound, bound), (rx - local, rx + local)]);
        let rho = polish(&slope, rho);
        let value = g(rho).max(value);
        if value <= 0.0 {
            return Err(Error::NoFootpoint);
        }
        Ok(Projection { tau: side * value, footpoint: Some(point(rho)), ambiguous })
    }

    /// Height and slope of a radial graph at signed parameter `rho` along a
    /// line through its symmetry center.
    fn profile(&self, rho: f64) -> (f64, f64) {
        match self {
            AchronalSet::Flat { height } => (*height, 0.0),
            AchronalSet::Cone { apex, slope } => {
                (apex.time() + slope * rho.abs(), slope * rho.signum() * f64::from(rho != 0.0))
            }
            AchronalSet::Hyperboloid { center, radius } => {
                let h = (radius * radius + rho * rho).sqrt();
                (center.time() + h, rho / h)
            }
            AchronalSet::Points(_) => unreachable!(),
        }
    }

    /// Half-width of a parameter interval containing every point of `V`
    /// chronologically related to `x`.
    fn bracket(&self, x: &Event, side: f64, rx: f64) -> Result<f64> {
        Ok(match self {
            AchronalSet::Flat { height } => (x.time() - height).abs(),
            AchronalSet::Cone { apex, slope } => ((x.time() - apex.time()).abs() + rx) / (1.0 - slope.abs()),
            AchronalSet::Hyperboloid { center, radius } => {
                let dt = x.time() - center.time();
                if side > 0.0 {
                    dt.abs() + rx
                } else {
                    let gap = dt - rx;
                    if gap <= 0.0 {
                        return Err(Error::UnboundedMaximization(x.coords().to_vec()));
                    }
                    radius * radius / gap + rx + radius
                }
            }
            AchronalSet::Points(_) => unreachable!(),
        })
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
}

fn project_points(points: &[Event], x: &Event) -> Projection {
    let future: Vec<f64> = points.iter().map(|y| tau_raw(y.coords(), x.coords())).collect();
    let past: Vec<f64> = points.iter().map(|y| tau_raw(x.coords(), y.coords())).collect();
    let (values, side) = if future.iter().any(|&v| v > 0.0) {
        (future, 1.0)
    } else if past.iter().any(|&v| v > 0.0) {
        (past, -1.0)
    } else {
        return Projection { tau: 0.0, footpoint: None, ambiguous: false };
    };
    let best = (0..values.len()).fold(0, |b, i| if values[i] > values[b] { i } else { b });
    let ambiguous =
        values.iter().enumerate().any(|(i, &v)| i != best && (values[best] - v).abs() <= FOOTPOINT_AMBIGUITY);
    Projection { tau: side * values[best], footpoint: Some(points[best].clone()), ambiguous }
}

/// Maximize `g` over the union of `windows`: grid scan of each window, then
/// golden-section refinement of every local maximum of the scans. Returns
/// `(argmax, max, ambiguous)`.
fn maximize<G: Fn(f64) -> f64>(g: &G, windows: &[(f64, f64)]) -> (f64, f64, bool) {
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    let mut fallback = (0.0, f64::NEG_INFINITY, 0.0, 0.0);
    for &(lo, hi) in windows {
        let h = (hi - lo) / SEEDS as f64;
        let xs: Vec<f64> = (0..=SEEDS).map(|i| lo + i as f64 * h).collect();
        let vs: Vec<f64> = xs.iter().map(|&r| g(r)).collect();
        for i in 0..=SEEDS {
            let left = if i == 0 { f64::NEG_INFINITY } else { vs[i - 1] };
            let right = if i == SEEDS { f64::NEG_INFINITY } else { vs[i + 1] };
            let bracket = (xs[i.saturating_sub(1)], xs[(i + 1).min(SEEDS)]);
            if vs[i] > 0.0 && vs[i] >= left && vs[i] >= right {
                candidates.push(golden_section(g, bracket.0, bracket.1));
            }
            if vs[i] > fallback.1 {
                fallback = (xs[i], vs[i], bracket.0, bracket.1);
            }
        }
    }
    if candidates.is_empty() {
        candidates.push(golden_section(g, fallback.2, fallback.3));
    }
    let best = candidates.iter().cloned().fold((0.0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
    let ambiguous = candidates
        .iter()
        .any(|c| (c.0 - best.0).abs() > 1e3 * FOOTPOINT_BRACKET && best.1 - c.1 <= FOOTPOINT_AMBIGUITY);
    (best.0, best.1, ambiguous)
}

/// Bisection on the sign change of `slope` in a small window around `rho`.
fn polish<D: Fn(f64) -> f64>(slope: &D, rho: f64) -> f64 {
    let delta = 1e-6 * (1.0 + rho.abs());
    let (mut lo, mut hi) = (rho - delta, rho + delta);
    if !(slope(lo) > 0.0 && slope(hi) < 0.0) {
        return rho;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_section<G: Fn(f64) -> f64>(g: &G, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while b - a > FOOTPOINT_BRACKET {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    let m = 0.5 * (a + b);
    let gm = g(m);
    [(m, gm), (c, gc), (d, gd)].into_iter().fold((m, gm), |best, p| if p.1 > best.1 { p } else { best })
}

/// Signed time separation `tau_V(x)`.
pub fn tau_v(space: &MinkowskiSpace, v: &AchronalSet, x: &Event) -> Result<f64> {
    Ok(v.project(space, x)?.tau)
}

/// A point `y` of `V` with `tau(y, x) = tau_V(x) > 0`.
pub fn footpoint(space: &MinkowskiSpace, v: &AchronalSet, x: &Event) -> Result<Event> {
    let p = v.project(space, x)?;
    if p.tau <= 0.0 {
        return Err(Error::NoFootpoint);
    }
    Ok(p.footpoint.expect("positive separation has a maximizer"))
}

/// `tau_V` over a finite achronal subset of an arbitrary space.
pub fn tau_v_finite<S: LorentzSpace>(space: &S, v: &[S::Point], x: &S::Point) -> f64 {
    let future = v.iter().map(|y| space.tau(y, x)).fold(0.0, f64::max);
    if future > 0.0 {
        return future;
    }
    -v.iter().map(|y| space.tau(x, y)).fold(0.0, f64::max)
}

/// Outcome of the reverse 1-Lipschitz check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LipschitzReport {
    pub holds: bool,
    pub pairs: usize,
    /// Smallest `tau_V(y) - tau_V(x) - tau(x, y)`.
    pub worst_margin: f64,
    /// Indices of violating pairs.
    pub failures: Vec<usize>,
}

/// `tau_V(y) - tau_V(x) >= tau(x, y)` on the given causal pairs, with an
/// arbitrary time function in place of `tau_V`.
pub fn one_lipschitz_check_with<F>(space: &MinkowskiSpace, time: F, pairs: &[(Event, Event)]) -> Result<LipschitzReport>
where
    F: Fn(&Event) -> Result<f64>,
{
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for (i, (x, y)) in pairs.iter().enumerate() {
        if !space.causal(x, y) {
            return Err(invalid("pairs", format!("pair {i} is not causally ordered")));
        }
        let margin = time(y)? - time(x)? - space.tau(x, y);
        worst = worst.min(margin);
        if margin < -ONE_LIPSCHITZ {
            failures.push(i);
        }
    }
    Ok(LipschitzReport { holds: failures.is_empty(), pairs: pairs.len(), worst_margin: worst, failures })
}

/// Reverse 1-Lipschitz property of `tau_V` on causal pairs in `I+(V)`.
pub fn one_lipschitz_check(
    space: &MinkowskiSpace,
    v: &AchronalSet,
    pairs: &[(Event, Event)],
) -> Result<LipschitzReport> {
    one_lipschitz_check_with(space, |x| tau_v(space, v, x), pairs)
}
