use std::path::PathBuf;

use anyhow::{bail, Result};
use causalot_core::geodesics::{geodesic_entropy_curve, lift_plan, AffineFlow, EntropyCurve, Rebinning};
use causalot_core::measures::{Grid, GridMeasure};
use causalot_core::transport::solve_lp;
use clap::{Args, Subcommand};
use serde_json::json;

use super::{exponent, floats, flow, fmt, opt, Floats};
use crate::parse::{self, SpaceArg};
use crate::report::{Report, Status};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum GeoCmd {
    /// Measures along an l_p geodesic between two point measures.
    Interpolate(InterpolateArgs),
    /// Entropy along an affine flow of a uniform grid measure.
    EntropyCurve(CurveArgs),
}

#[derive(Args, Debug)]
pub struct InterpolateArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Point-measure document of the initial measure.
    #[arg(long)]
    mu: PathBuf,
    /// Point-measure document of the final measure.
    #[arg(long)]
    nu: PathBuf,
    /// Transport exponent `p` in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Interpolation times in [0, 1].
    #[arg(long, value_parser = floats, default_value = "0,0.25,0.5,0.75,1")]
    times: Floats,
}

/// A uniform grid measure on a box pushed along an affine flow.
#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    pub space: SpaceArg,
    /// Lower corner of the support box (default `-0.5` on every axis).
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    pub lo: Option<Floats>,
    /// Upper corner of the support box (default `0.5` on every axis).
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    pub hi: Option<Floats>,
    /// `contraction:t,x..`, `translation:v..` or `dilation:t,x..;rate`.
    #[arg(long, value_parser = flow, allow_hyphen_values = true)]
    pub flow: Option<AffineFlow>,
    /// Number of uniform time steps in [0, 1].
    #[arg(long, default_value_t = 16)]
    pub steps: usize,
}

impl CurveArgs {
    pub fn curve(&self, g: &Global) -> Result<EntropyCurve> {
        let Some(flow) = &self.flow else {
            bail!("--flow is required to generate a curve");
        };
        if self.steps < 2 {
            bail!("--steps must be at least 2");
        }
        let m = parse::minkowski(&self.space)?;
        let region = parse::region(&opt(&self.lo), &opt(&self.hi), m.dim(), 0.5)?;
        let mu = GridMeasure::uniform(Grid::square(region, g.grid(64)?)?)?;
        let times: Vec<f64> = (0..=self.steps).map(|k| k as f64 / self.steps as f64).collect();
        Ok(geodesic_entropy_curve(&m, &mu, flow, &times, &Rebinning::Adapted)?)
    }
}

pub fn run(cmd: GeoCmd, g: &Global) -> Result<Report> {
    match cmd {
        GeoCmd::Interpolate(a) => interpolate(a, g),
        GeoCmd::EntropyCurve(a) => {
            let c = a.curve(g)?;
            if let Some(path) = &g.csv {
                c.write_csv(std::fs::File::create(path)?)?;
            }
            Report::new("geo entropy-curve", Status::Done, c)
        }
    }
}

fn interpolate(a: InterpolateArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let (mu, nu) = (parse::point_measure(&a.mu)?, parse::point_measure(&a.nu)?);
    if a.times.0.iter().any(|t| !(0.0..=1.0).contains(t)) {
        bail!("--times must lie in [0, 1]");
    }
    let r = solve_lp(&m, &mu, &nu, exponent(a.p)?)?;
    let Some(plan) = &r.plan else {
        return Report::new(
            "geo interpolate",
            Status::Fail,
            json!({ "reason": "no causal coupling", "value": "-inf" }),
        );
    };
    let eta = lift_plan(&m, &mu, &nu, plan)?;
    let mut measures = Vec::new();
    let mut rows = Vec::new();
    for &t in &a.times.0 {
        let mt = eta.evaluate(&m, t)?;
        for (i, (x, w)) in mt.iter().enumerate() {
            let c: Vec<String> = x.coords().iter().map(|v| fmt(*v)).collect();
            rows.push(vec![fmt(t), i.to_string(), c.join(" "), fmt(w)]);
        }
        measures.push(json!({ "t": t, "support": mt.support(), "weights": mt.weights() }));
    }
    super::write_csv(g.csv.as_deref(), &["t", "atom", "coords", "weight"], rows)?;
    Report::new("geo interpolate", Status::Done, json!({ "value": r.value, "measures": measures }))
}
