use std::path::PathBuf;

use anyhow::{bail, Result};
use causalot_core::document::Document;
use causalot_core::rng::stream;
use causalot_core::spacetime::{sprinkle, validate_prelength};
use clap::{Args, Subcommand};

use super::{floats, fmt, opt, Floats};
use crate::parse::{self, LoadedSpace, SpaceArg};
use crate::report::{Report, Status};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum SpaceCmd {
    /// Check the pre-length space axioms on every pair and triple of a sample.
    Validate(ValidateArgs),
    /// Poisson-sprinkle a box of Minkowski space.
    Sprinkle(SprinkleArgs),
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space)]
    space: SpaceArg,
    /// Point-measure document whose support is the Minkowski sample.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Lower corner of the box sampled when no points are given.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    lo: Option<Floats>,
    /// Upper corner of the box sampled when no points are given.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    hi: Option<Floats>,
}

#[derive(Args, Debug)]
pub struct SprinkleArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space)]
    space: SpaceArg,
    /// Lower corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    lo: Option<Floats>,
    /// Upper corner of the box, comma-separated.
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    hi: Option<Floats>,
    /// Expected number of points per unit volume.
    #[arg(long)]
    intensity: f64,
}

pub fn run(cmd: SpaceCmd, g: &Global) -> Result<Report> {
    match cmd {
        SpaceCmd::Validate(a) => validate(a, g),
        SpaceCmd::Sprinkle(a) => sprinkle_box(a, g),
    }
}

fn validate(a: ValidateArgs, g: &Global) -> Result<Report> {
    let report = match parse::load_space(&a.space)? {
        LoadedSpace::Minkowski(m) => {
            let sample = match &a.points {
                Some(path) => parse::point_measure(path)?.support().to_vec(),
                None => {
                    let region = parse::region(&opt(&a.lo), &opt(&a.hi), m.dim(), 1.0)?;
                    let mut rng = stream(g.seed()?, 0);
                    (0..g.samples(200)?).map(|_| region.sample(&mut rng)).collect()
                }
            };
            validate_prelength(&m, &sample)
        }
        LoadedSpace::Dag(d) => validate_prelength(&d, &(0..d.len()).collect::<Vec<_>>()),
        LoadedSpace::Sprinkled(s) => validate_prelength(&s, &(0..s.len()).collect::<Vec<_>>()),
    };
    super::write_csv(
        g.csv.as_deref(),
        &["kind", "indices", "margin"],
        report.violations.iter().map(|v| {
            let idx: Vec<String> = v.indices.iter().map(|i| i.to_string()).collect();
            vec![
                serde_json::to_value(v.kind).unwrap().as_str().unwrap_or_default().to_string(),
                idx.join(" "),
                fmt(v.margin),
            ]
        }),
    )?;
    Report::new("space validate", Status::from_bool(report.is_valid()), report)
}

fn sprinkle_box(a: SprinkleArgs, g: &Global) -> Result<Report> {
    let SpaceArg::Minkowski(n) = a.space else {
        bail!("sprinkling needs an inline minkowski:n+1 space");
    };
    let m = causalot_core::MinkowskiSpace::new(n);
    let region = parse::region(&opt(&a.lo), &opt(&a.hi), m.dim(), 1.0)?;
    let s = sprinkle(&m, &region, a.intensity, g.seed()?)?;
    super::write_csv(
        g.csv.as_deref(),
        &["index", "coords"],
        s.points().iter().enumerate().map(|(i, p)| {
            let c: Vec<String> = p.coords().iter().map(|x| fmt(*x)).collect();
            vec![i.to_string(), c.join(" ")]
        }),
    )?;
    Report::new("space sprinkle", Status::Done, Document::sprinkled(&s))
}
