//! Value parsers for command-line flags.
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use causalot_core::document::{Body, Document};
use causalot_core::localization::AchronalSet;
use causalot_core::{BoxRegion, Event, MinkowskiSpace, PointMeasure};

/// Comma-separated numbers; `inf` and `-inf` are accepted.
pub fn list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|x| number(x.trim())).collect()
}

pub fn number(s: &str) -> Result<f64, String> {
    match s {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s.parse::<f64>().map_err(|e| format!("`{s}` is not a number: {e}")),
    }
}

pub fn event(s: &str) -> Result<Event, String> {
    list(s).map(Event::from)
}

/// Spaces given inline as `minkowski:n+1` or as a path to a JSON document.
#[derive(Clone, Debug)]
pub enum SpaceArg {
    Minkowski(usize),
    File(String),
}

pub fn space(s: &str) -> Result<SpaceArg, String> {
    if let Some(sig) = s.strip_prefix("minkowski:") {
        let (n, one) = sig.split_once('+').ok_or_else(|| format!("expected minkowski:n+1, got `{s}`"))?;
        if one != "1" {
            return Err(format!("only one time dimension is supported, got `{s}`"));
        }
        let n: usize = n.parse().map_err(|_| format!("bad spatial dimension in `{s}`"))?;
        if n == 0 {
            return Err("spatial dimension must be at least 1".into());
        }
        return Ok(SpaceArg::Minkowski(n));
    }
    Ok(SpaceArg::File(s.to_string()))
}

/// A space that the command can act on.
pub enum LoadedSpace {
    Minkowski(MinkowskiSpace),
    Dag(causalot_core::CausalDagSpace),
    Sprinkled(causalot_core::SprinkledSpace),
}

pub fn load_space(arg: &SpaceArg) -> Result<LoadedSpace> {
    match arg {
        SpaceArg::Minkowski(n) => Ok(LoadedSpace::Minkowski(MinkowskiSpace::new(*n))),
        SpaceArg::File(path) => {
            let doc = read_document(Path::new(path))?;
            Ok(match doc.body {
                Body::Minkowski { .. } => LoadedSpace::Minkowski(doc.into_minkowski()?),
                Body::CausalDag { .. } => LoadedSpace::Dag(doc.into_dag()?),
                Body::Sprinkled { .. } => LoadedSpace::Sprinkled(doc.into_sprinkled()?),
                _ => bail!("{path} does not hold a space"),
            })
        }
    }
}

pub fn minkowski(arg: &SpaceArg) -> Result<MinkowskiSpace> {
    match load_space(arg)? {
        LoadedSpace::Minkowski(m) => Ok(m),
        _ => bail!("this command needs a Minkowski space"),
    }
}

/// Reads a document, either bare or as the `result` of a report.
pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut v: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(inner) = v.get_mut("result") {
        v = inner.take();
    }
    Document::from_json(&v.to_string()).with_context(|| format!("reading {}", path.display()))
}

pub fn point_measure(path: &Path) -> Result<PointMeasure<Event>> {
    Ok(read_document(path)?.into_point_measure()?)
}

/// `lo`/`hi` corners, defaulting to the cube `[-half, half]^dim`.
pub fn region(lo: &Option<Vec<f64>>, hi: &Option<Vec<f64>>, dim: usize, half: f64) -> Result<BoxRegion> {
    let lo = lo.clone().unwrap_or_else(|| vec![-half; dim]);
    let hi = hi.clone().unwrap_or_else(|| vec![half; dim]);
    if lo.len() != dim || hi.len() != dim {
        bail!("box corners need {dim} coordinates");
    }
    Ok(BoxRegion::new(lo, hi)?)
}

/// Achronal sets: `flat:h`, `cone:t,x..;slope`, `hyperboloid:t,x..;radius`,
/// or `points:t,x..;t,x..;...`.
pub fn achronal(s: &str) -> Result<AchronalSet> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| anyhow!("expected kind:parameters, got `{s}`"))?;
    let parts: Vec<&str> = rest.split(';').collect();
    let ev = |p: &str| event(p).map_err(|e| anyhow!(e));
    let num = |p: &str| number(p.trim()).map_err(|e| anyhow!(e));
    Ok(match (kind, parts.as_slice()) {
        ("flat", [h]) => AchronalSet::flat(num(h)?),
        ("cone", [apex, slope]) => AchronalSet::cone(ev(apex)?, num(slope)?)?,
        ("hyperboloid", [center, radius]) => AchronalSet::hyperboloid(ev(center)?, num(radius)?)?,
        ("points", pts) => AchronalSet::points(pts.iter().map(|p| ev(p)).collect::<Result<_>>()?)?,
        _ => bail!("unknown achronal set `{s}`"),
    })
}
