use std::path::PathBuf;

use anyhow::{bail, Result};
use causalot_core::comparison::{HawkingParams, StarShapedRegion};
use causalot_core::localization::{
    disintegrate, hawking_verify, mcp_density_check, mean_curvature_estimate, DisintegrationParams, EstimateStatus,
    MeanCurvatureCertificate, MeanCurvatureParams, MinkowskiAchronal, SampleRegion, Side, VariationProfile,
};
use causalot_core::rng::stream;
use causalot_core::{Error, Event};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use super::{dimension_check, floats, opt, Floats};
use crate::parse::{self, SpaceArg};
use crate::report::{Report, Status};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum LocalizeCmd {
    /// Ray decomposition of a region and the one-dimensional density check.
    Disintegrate(DisintegrateArgs),
    /// Monte Carlo synthetic mean curvature of an achronal graph.
    MeanCurvature(MeanCurvatureArgs),
    /// tau_V against the Hawking constant on probe events.
    HawkingVerify(HawkingVerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RegionKind {
    Box,
    Diamond,
}

#[derive(Args, Debug)]
pub struct DisintegrateArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// `flat:h`, `cone:t,x..;slope`, `hyperboloid:t,x..;radius` or `points:t,x..;..`.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Star-shaped region sampled.
    #[arg(long, value_enum, default_value = "box")]
    region: RegionKind,
    /// Lower corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    lo: Option<Floats>,
    /// Upper corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    hi: Option<Floats>,
    /// Past apex of the diamond.
    #[arg(long, value_parser = parse::event, allow_hyphen_values = true)]
    apex: Option<Event>,
    /// Future tip of the diamond.
    #[arg(long, value_parser = parse::event, allow_hyphen_values = true)]
    tip: Option<Event>,
    /// Bins per transverse coordinate when grouping rays.
    #[arg(long, default_value_t = 32)]
    ray_bins: usize,
    /// Bins of `tau_V` along each ray.
    #[arg(long, default_value_t = 10)]
    tau_bins: usize,
    /// Samples a ray bin needs to be kept.
    #[arg(long, default_value_t = 200)]
    min_per_bin: usize,
    /// Lower timelike Ricci bound `K`.
    #[arg(long = "K", default_value_t = 0.0, allow_hyphen_values = true)]
    k: f64,
    /// Dimension bound (default: the spacetime dimension).
    #[arg(long = "N")]
    n: Option<f64>,
    /// Bins with fewer samples are not compared.
    #[arg(long, default_value_t = 100)]
    min_count: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Upper,
    Lower,
}

#[derive(Args, Debug)]
pub struct MeanCurvatureArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Achronal set: `flat:h`, `cone:t,x..;slope`, `hyperboloid:t,x..;r` or `points:..`.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Lower corner of the spatial window of the variation.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    lo: Option<Floats>,
    /// Upper corner of the spatial window of the variation.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    hi: Option<Floats>,
    /// Height of the level set above the achronal set.
    #[arg(long, default_value_t = 1.0)]
    height: f64,
    /// Which side of the mean-curvature bound to estimate.
    #[arg(long, value_enum, default_value = "upper")]
    side: SideArg,
    /// Claimed bound on the chosen side; sets the verdict.
    #[arg(long, allow_hyphen_values = true)]
    bound: Option<f64>,
    /// Largest level `t` used in the fit.
    #[arg(long, default_value_t = 0.2)]
    t0: f64,
    /// Independent batches behind the confidence interval.
    #[arg(long, default_value_t = 32)]
    batches: usize,
}

#[derive(Args, Debug)]
pub struct HawkingVerifyArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Achronal set: `flat:h`, `cone:t,x..;slope`, `hyperboloid:t,x..;r` or `points:..`.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Mean-curvature bound `H0` of the initial set.
    #[arg(long = "H0", allow_hyphen_values = true)]
    h0: f64,
    /// Lower timelike Ricci bound `K`.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: f64,
    /// Dimension bound `N`; `inf` is accepted.
    #[arg(long = "N")]
    n: f64,
    /// Point-measure document whose support holds the probes.
    #[arg(long)]
    probes: Option<PathBuf>,
    /// Number of uniform probes in the box when no probe file is given.
    #[arg(long, default_value_t = 256)]
    probe_count: usize,
    /// Lower corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    lo: Option<Floats>,
    /// Upper corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    hi: Option<Floats>,
    /// Mean-curvature bound known from the construction of the set; when
    /// absent the bound is estimated on the spatial window of the probes.
    #[arg(long, allow_hyphen_values = true)]
    certified_bound: Option<f64>,
}

pub fn run(cmd: LocalizeCmd, g: &Global) -> Result<Report> {
    match cmd {
        LocalizeCmd::Disintegrate(a) => disintegrate_region(a, g),
        LocalizeCmd::MeanCurvature(a) => mean_curvature(a, g),
        LocalizeCmd::HawkingVerify(a) => verify(a, g),
    }
}

fn disintegrate_region(a: DisintegrateArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let d = m.dim();
    let v = parse::achronal(&a.set)?;
    let region = match a.region {
        RegionKind::Box => SampleRegion::Box(parse::region(&opt(&a.lo), &opt(&a.hi), d, 1.0)?),
        RegionKind::Diamond => {
            let (Some(apex), Some(tip)) = (a.apex, a.tip) else {
                bail!("a diamond needs --apex and --tip");
            };
            dimension_check(d, "--apex", apex.dim())?;
            dimension_check(d, "--tip", tip.dim())?;
            SampleRegion::Star(StarShapedRegion::diamond(apex, tip)?)
        }
    };
    let params = DisintegrationParams {
        resolution: g.grid(512)?,
        ray_bins: a.ray_bins,
        tau_bins: a.tau_bins,
        min_per_bin: a.min_per_bin,
        seed: g.seed()?,
    };
    let decomp = disintegrate(&m, &v, &region, &params)?;
    let mcp = mcp_density_check(&decomp, a.k, a.n.unwrap_or(d as f64), a.min_count)?;
    if let Some(path) = &g.csv {
        decomp.write_csv(path)?;
    }
    let result = json!({
        "rays": decomp.rays.len(),
        "sampled_mass": decomp.sampled_mass,
        "excluded_mass": decomp.excluded_mass,
        "reconstructed_mass": decomp.reconstructed_mass,
        "mass_balance": decomp.mass_balance,
        "saturation_defect": decomp.saturation_defect(&m, &v)?,
        "mcp": mcp,
        "params": params,
    });
    Report::new("localize disintegrate", Status::from_bool(mcp.holds), result)
}

fn window(lo: &Option<Floats>, hi: &Option<Floats>, spatial: usize, height: f64) -> Result<VariationProfile> {
    let lo = opt(lo).unwrap_or_else(|| vec![-0.5; spatial]);
    let hi = opt(hi).unwrap_or_else(|| vec![0.5; spatial]);
    dimension_check(spatial, "window corner", lo.len())?;
    dimension_check(spatial, "window corner", hi.len())?;
    Ok(VariationProfile::new(lo, hi, height)?)
}

fn mean_curvature(a: MeanCurvatureArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let v = parse::achronal(&a.set)?;
    let phi = window(&a.lo, &a.hi, m.spatial_dim(), a.height)?;
    let side = match a.side {
        SideArg::Upper => Side::Upper,
        SideArg::Lower => Side::Lower,
    };
    let params = MeanCurvatureParams { t0: a.t0, samples: g.samples(1 << 17)?, batches: a.batches, seed: g.seed()? };
    let e = mean_curvature_estimate(&m, &v, &phi, side, &params)?;
    let status = match (a.bound, &e.status) {
        (Some(h0), _) => e.certifies(h0).into(),
        (None, EstimateStatus::Inconclusive { .. }) => Status::Inconclusive,
        (None, EstimateStatus::Resolved) => Status::Done,
    };
    Report::new("localize mean-curvature", status, json!({ "estimate": e, "bound": a.bound }))
}

fn verify(a: HawkingVerifyArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let d = m.dim();
    let set = parse::achronal(&a.set)?;
    let params = HawkingParams::new(a.h0, a.k, a.n)?;
    let region = parse::region(&opt(&a.lo), &opt(&a.hi), d, 1.0)?;
    let probes: Vec<Event> = match &a.probes {
        Some(path) => parse::point_measure(path)?.support().to_vec(),
        None => {
            let mut rng = stream(g.seed()?, 0);
            (0..a.probe_count).map(|_| region.sample(&mut rng)).collect()
        }
    };
    let certificate = match a.certified_bound {
        Some(bound) => MeanCurvatureCertificate::ByConstruction { bound },
        None => {
            let phi = VariationProfile::new(region.lo[1..].to_vec(), region.hi[1..].to_vec(), 1.0)?;
            let mc = MeanCurvatureParams { samples: g.samples(1 << 17)?, seed: g.seed()?, ..Default::default() };
            MeanCurvatureCertificate::Estimate(mean_curvature_estimate(&m, &set, &phi, Side::Upper, &mc)?)
        }
    };
    let v = MinkowskiAchronal { space: &m, set: &set };
    match hawking_verify(&v, &probes, &params, &certificate, g.tol(1e-9)?) {
        Ok(report) => Report::new(
            "localize hawking-verify",
            report.verdict.into(),
            json!({ "report": report, "certificate": certificate }),
        ),
        Err(Error::Precondition(reason)) => Report::new(
            "localize hawking-verify",
            Status::Inconclusive,
            json!({ "reason": reason, "certificate": certificate }),
        ),
        Err(e) => Err(e.into()),
    }
}
