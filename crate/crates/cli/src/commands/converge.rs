use anyhow::Result;
use causalot_core::convergence::{converge_diagnose, tent_dictionary};
use clap::{Args, Subcommand};

use super::{floats, fmt, opt, Floats};
use crate::parse::{self, SpaceArg};
use crate::report::{Report, Status};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum ConvergeCmd {
    /// Weak discrepancy of sprinklings against Lebesgue measure.
    Diagnose(DiagnoseArgs),
}

#[derive(Args, Debug)]
pub struct DiagnoseArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Lower corner of the box (default: the origin).
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    lo: Option<Floats>,
    /// Upper corner of the box (default: all ones).
    #[arg(long, value_parser = floats, allow_hyphen_values = true)]
    hi: Option<Floats>,
    /// Strictly increasing sprinkling intensities.
    #[arg(long, value_parser = floats, default_value = "100,1000,10000")]
    intensities: Floats,
    /// Number of tent functions in the dictionary.
    #[arg(long, default_value_t = 20)]
    dictionary: usize,
}

pub fn run(cmd: ConvergeCmd, g: &Global) -> Result<Report> {
    let ConvergeCmd::Diagnose(a) = cmd;
    let m = parse::minkowski(&a.space)?;
    let d = m.dim();
    let lo = opt(&a.lo).unwrap_or_else(|| vec![0.0; d]);
    let hi = opt(&a.hi).unwrap_or_else(|| vec![1.0; d]);
    let region = parse::region(&Some(lo), &Some(hi), d, 1.0)?;
    let seed = g.seed()?;
    let dict = tent_dictionary(&region, a.dictionary, seed);
    let r = converge_diagnose(&m, &region, &a.intensities.0, &dict, seed)?;
    super::write_csv(
        g.csv.as_deref(),
        &["intensity", "count", "discrepancy"],
        r.intensities
            .iter()
            .zip(&r.counts)
            .zip(&r.discrepancies)
            .map(|((i, c), x)| vec![fmt(*i), c.to_string(), fmt(*x)]),
    )?;
    Report::new("converge diagnose", Status::from_bool(r.decreasing), &r)
}
