//! Subcommand groups.
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use causalot_core::geodesics::AffineFlow;

use crate::parse;

pub mod compare;
pub mod converge;
pub mod curv;
pub mod geo;
pub mod localize;
pub mod ot;
pub mod space;

/// Comma-separated numbers as a single flag value.
#[derive(Clone, Debug, PartialEq)]
pub struct Floats(pub Vec<f64>);

pub fn floats(s: &str) -> Result<Floats, String> {
    parse::list(s).map(Floats)
}

pub fn opt(v: &Option<Floats>) -> Option<Vec<f64>> {
    v.as_ref().map(|f| f.0.clone())
}

/// Affine flows: `contraction:t,x..`, `translation:v..`, `dilation:t,x..;rate`.
pub fn flow(s: &str) -> Result<AffineFlow, String> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| format!("expected kind:parameters, got `{s}`"))?;
    match kind {
        "contraction" => Ok(AffineFlow::contraction_to(parse::event(rest)?)),
        "translation" => Ok(AffineFlow::translation(parse::list(rest)?)),
        "dilation" => {
            let (apex, rate) = rest.split_once(';').ok_or("dilation needs apex;rate")?;
            Ok(AffineFlow::dilation(parse::event(apex)?, parse::number(rate.trim())?))
        }
        _ => Err(format!("unknown flow `{kind}`")),
    }
}

/// Exponent `p` of the transport problem, in `(0, 1]`.
pub fn exponent(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        bail!("--p must lie in (0, 1], got {p}");
    }
    Ok(p)
}

/// Writes `rows` under `header` to `path` when a CSV path was requested.
pub fn write_csv(path: Option<&Path>, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn fmt(x: f64) -> String {
    format!("{x}")
}

pub fn dimension_check(dim: usize, what: &str, len: usize) -> Result<()> {
    if len != dim {
        return Err(anyhow!("{what} needs {dim} coordinates, got {len}"));
    }
    Ok(())
}
