use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use causalot_core::curvature::{
    default_tmcp_times, minkowski_suite, ricci_upper_check, sigma, tcd_check, tmcp_check, uN_transform_check,
    vacuum_einstein_check, CurvatureParams, Remainder, UpperBoundParams, VacuumParams,
};
use causalot_core::geodesics::EntropyCurve;
use causalot_core::measures::{Grid, GridMeasure};
use causalot_core::{BoxRegion, Event};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::geo::CurveArgs;
use super::{dimension_check, floats, fmt, opt, Floats};
use crate::parse::{self, SpaceArg};
use crate::report::Report;
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum CurvCmd {
    /// (K, N)-concavity of exp(-Ent/N) along an entropy curve.
    Tcd(TcdArgs),
    /// Measure contraction toward a Dirac mass.
    Tmcp(TmcpArgs),
    /// Timelike Ricci upper bound at a pair of events.
    Upper(UpperArgs),
    /// Vacuum Einstein check on the shipped Minkowski scenarios.
    Vacuum(VacuumArgs),
}

#[derive(Args, Debug)]
pub struct TcdArgs {
    /// Entropy-curve JSON, either bare or a `geo entropy-curve` report.
    #[arg(long)]
    curve: Option<PathBuf>,
    #[command(flatten)]
    generate: CurveArgs,
    /// Lower timelike Ricci bound `K`.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: f64,
    /// Dimension bound; `inf` is accepted.
    #[arg(long = "N", value_parser = parse::number)]
    n: f64,
    /// Transport exponent `p` in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Args, Debug)]
pub struct TmcpArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Lower corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    lo: Option<Floats>,
    /// Upper corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    hi: Option<Floats>,
    /// Dirac target (default: three units up the time axis).
    #[arg(long, value_parser = parse::event, allow_hyphen_values = true)]
    target: Option<Event>,
    /// Lower timelike Ricci bound `K`.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: f64,
    /// Dimension bound `N`; `inf` is accepted.
    #[arg(long = "N", value_parser = parse::number)]
    n: f64,
    /// Transport exponent `p` in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OmegaArg {
    /// No remainder.
    Zero,
    /// Remainder sized by the re-binning error of the witnesses.
    Budget,
}

impl OmegaArg {
    fn remainder(self) -> Remainder {
        match self {
            OmegaArg::Zero => Remainder::Zero,
            OmegaArg::Budget => Remainder::RebinningBudget,
        }
    }
}

#[derive(Args, Debug)]
pub struct UpperArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Base event (default: the origin).
    #[arg(long, value_parser = parse::event, allow_hyphen_values = true)]
    x: Option<Event>,
    /// Event in the chronological future of `x`.
    #[arg(long, value_parser = parse::event, allow_hyphen_values = true)]
    y: Event,
    /// Lower timelike Ricci bound `K`.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: f64,
    /// Largest admissible separation.
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    /// Error budget `omega(r)` of the upper bound.
    #[arg(long, value_enum, default_value = "budget")]
    omega: OmegaArg,
    /// Transport exponent `p` in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Args, Debug)]
pub struct VacuumArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Cosmological constant.
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    /// Dimension bound (default: the spacetime dimension).
    #[arg(long = "N", value_parser = parse::number)]
    n: Option<f64>,
    /// Transport exponent `p` in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Error budget `omega(r)` of the upper bound.
    #[arg(long, value_enum, default_value = "budget")]
    omega: OmegaArg,
}

pub fn run(cmd: CurvCmd, g: &Global) -> Result<Report> {
    match cmd {
        CurvCmd::Tcd(a) => tcd(a, g),
        CurvCmd::Tmcp(a) => tmcp(a, g),
        CurvCmd::Upper(a) => upper(a, g),
        CurvCmd::Vacuum(a) => vacuum(a, g),
    }
}

fn read_curve(path: &PathBuf) -> Result<EntropyCurve> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut v: Value = serde_json::from_str(&text)?;
    if let Some(inner) = v.get_mut("result") {
        v = inner.take();
    }
    Ok(serde_json::from_value(v)?)
}

fn tcd(a: TcdArgs, g: &Global) -> Result<Report> {
    let curve = match &a.curve {
        Some(path) => read_curve(path)?,
        None => a.generate.curve(g)?,
    };
    let params = CurvatureParams::new(a.p, a.k, a.n)?.with_tol(g.tol(1e-6)?)?;
    let report = tcd_check(&curve, &params)?;
    let differential = if a.n.is_finite() { Some(uN_transform_check(&curve, a.k, a.n, params.tol)?) } else { None };
    if let Some(path) = &g.csv {
        curve.write_csv(std::fs::File::create(path)?)?;
    }
    Report::new("curv tcd", report.verdict.into(), json!({ "report": report, "differential": differential }))
}

fn tmcp(a: TmcpArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let region = parse::region(&opt(&a.lo), &opt(&a.hi), m.dim(), 0.5)?;
    let mu0 = GridMeasure::uniform(Grid::square(region, g.grid(64)?)?)?;
    let target = a.target.unwrap_or_else(|| {
        let mut t = vec![0.0; m.dim()];
        t[0] = 3.0;
        Event::from(t)
    });
    dimension_check(m.dim(), "--target", target.dim())?;
    let params = CurvatureParams::new(a.p, a.k, a.n)?.with_tol(g.tol(1e-9)?)?;
    let times = default_tmcp_times();
    let out = tmcp_check(&m, &mu0, &target, &params, &times)?;
    let kappa = a.k / a.n;
    super::write_csv(
        g.csv.as_deref(),
        &["t", "u", "model"],
        times.iter().zip(&out.u).map(|(t, u)| vec![fmt(*t), fmt(*u), fmt(sigma(kappa, 1.0 - t, out.theta) * out.u0)]),
    )?;
    Report::new("curv tmcp", out.report.verdict.into(), &out)
}

fn upper(a: UpperArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let d = m.dim();
    let x = a.x.unwrap_or_else(|| Event::from(vec![0.0; d]));
    dimension_check(d, "--x", x.dim())?;
    dimension_check(d, "--y", a.y.dim())?;
    let r = causalot_core::spacetime::minkowski_tau(&x, &a.y)?;
    if r <= 0.0 {
        bail!("--y must lie in the chronological future of --x");
    }
    // a small box about x, shrinking like r^4 so the witnesses stay inside the cone
    let h = 0.9 * r.powi(4) / (d as f64).sqrt();
    let lo: Vec<f64> = x.coords().iter().map(|c| c - h).collect();
    let hi: Vec<f64> = x.coords().iter().map(|c| c + h).collect();
    let mu0 = GridMeasure::uniform(Grid::square(BoxRegion::new(lo, hi)?, g.grid(32)?)?)?;
    let mut params = UpperBoundParams::new(a.k, a.r0).with_omega(a.omega.remainder());
    params.tol = g.tol(1e-9)?;
    let (report, witnesses) = ricci_upper_check(&m, &x, &a.y, &mu0, &params, super::exponent(a.p)?)?;
    Report::new("curv upper", report.verdict.into(), json!({ "report": report, "witnesses": witnesses }))
}

fn vacuum(a: VacuumArgs, g: &Global) -> Result<Report> {
    let m = parse::minkowski(&a.space)?;
    let suite = minkowski_suite(&m, g.grid(64)?)?;
    let mut params = VacuumParams::new(a.lambda, a.n.unwrap_or(m.dim() as f64), a.p).with_omega(a.omega.remainder());
    params.tol = g.tol(1e-9)?;
    let r = vacuum_einstein_check(&m, &suite, &params)?;
    super::write_csv(
        g.csv.as_deref(),
        &["scenario", "side", "verdict", "margin"],
        r.scenarios.iter().map(|s| {
            let v = serde_json::to_value(s.report.verdict).unwrap();
            vec![s.name.clone(), s.side.clone(), v.as_str().unwrap_or_default().to_string(), fmt(s.report.margin)]
        }),
    )?;
    Report::new("curv vacuum", r.verdict.into(), &r)
}
