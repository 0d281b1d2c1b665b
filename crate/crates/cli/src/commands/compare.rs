use anyhow::{bail, Result};
use causalot_core::comparison::{
    bishop_gromov_mc, bonnet_myers_bound, hawking_bound, riccati_oracle, HawkingParams, StarShapedRegion,
};
use causalot_core::Event;
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use super::{dimension_check, floats, fmt, Floats};
use crate::parse::{self, SpaceArg};
use crate::report::{Report, Status};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum CompareCmd {
    /// Monte Carlo tau-ball volume ratios against the flat model.
    BishopGromov(BishopGromovArgs),
    /// The Hawking comparison constant D.
    Hawking(HawkingArgs),
    /// The Bonnet-Myers diameter bound.
    BonnetMyers(BonnetMyersArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RegionKind {
    Diamond,
    Cone,
}

#[derive(Args, Debug)]
pub struct BishopGromovArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Star-shaped region sampled.
    #[arg(long, value_enum, default_value = "diamond")]
    region: RegionKind,
    /// Apex of the region (default: the origin).
    #[arg(long, value_parser = parse::event, allow_hyphen_values = true)]
    apex: Option<Event>,
    /// Future tip of a diamond (default: three units up the time axis).
    #[arg(long, value_parser = parse::event, allow_hyphen_values = true)]
    tip: Option<Event>,
    /// Height of a truncated cone.
    #[arg(long, default_value_t = 1.5)]
    height: f64,
    /// Outer radius.
    #[arg(long = "R")]
    big_r: f64,
    /// Inner radii.
    #[arg(long, value_parser = floats)]
    r: Floats,
}

#[derive(Args, Debug)]
pub struct HawkingArgs {
    /// Mean-curvature bound `H0` of the initial set.
    #[arg(long = "H0", allow_hyphen_values = true)]
    h0: f64,
    /// Lower timelike Ricci bound `K`.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: f64,
    /// Dimension bound `N`; `inf` is accepted.
    #[arg(long = "N")]
    n: f64,
    /// Also integrate the Riccati equation with this step and compare.
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args, Debug)]
pub struct BonnetMyersArgs {
    /// Lower timelike Ricci bound `K`.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: f64,
    /// Dimension bound `N`; `inf` is accepted.
    #[arg(long = "N")]
    n: f64,
}

pub fn run(cmd: CompareCmd, g: &Global) -> Result<Report> {
    match cmd {
        CompareCmd::BishopGromov(a) => bishop_gromov(a, g),
        CompareCmd::Hawking(a) => {
            let params = HawkingParams::new(a.h0, a.k, a.n)?;
            let value = hawking_bound(&params)?;
            let mut result = json!({ "H0": a.h0, "K": a.k, "N": a.n, "regime": params.regime()?, "value": value });
            let mut status = Status::Done;
            if let Some(step) = a.step {
                let oracle = riccati_oracle(&params, step)?;
                status = Status::from_bool((oracle - value).abs() <= g.tol(1e-6)?);
                result["oracle"] = json!(oracle);
                result["difference"] = json!((oracle - value).abs());
            }
            Report::new("compare hawking", status, result)
        }
        CompareCmd::BonnetMyers(a) => {
            let value = bonnet_myers_bound(a.k, a.n)?;
            Report::new("compare bonnet-myers", Status::Done, json!({ "K": a.k, "N": a.n, "value": value }))
        }
    }
}

fn bishop_gromov(a: BishopGromovArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let d = m.dim();
    let apex = a.apex.unwrap_or_else(|| Event::from(vec![0.0; d]));
    dimension_check(d, "--apex", apex.dim())?;
    let region = match a.region {
        RegionKind::Diamond => {
            let tip = a.tip.unwrap_or_else(|| {
                let mut t = apex.coords().to_vec();
                t[0] += 3.0;
                Event::from(t)
            });
            dimension_check(d, "--tip", tip.dim())?;
            StarShapedRegion::diamond(apex, tip)?
        }
        RegionKind::Cone => StarShapedRegion::truncated_cone(apex, a.height)?,
    };
    if a.r.0.is_empty() {
        bail!("--r needs at least one radius");
    }
    let (samples, seed) = (g.samples(1_000_000)?, g.seed()?);
    let estimates =
        a.r.0
            .iter()
            .map(|&r| bishop_gromov_mc(&m, &region, r, a.big_r, samples, seed))
            .collect::<Result<Vec<_>, _>>()?;
    super::write_csv(
        g.csv.as_deref(),
        &["r", "ratio", "model", "ci"],
        estimates.iter().map(|e| vec![fmt(e.r), fmt(e.ratio), fmt(e.model), fmt(e.half_width)]),
    )?;
    let status = Status::from_bool(estimates.iter().all(|e| e.holds));
    Report::new("compare bishop-gromov", status, json!({ "region": region, "estimates": estimates }))
}
