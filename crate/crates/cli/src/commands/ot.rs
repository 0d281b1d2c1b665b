use std::path::PathBuf;

use anyhow::Result;
use causalot_core::transport::{classify_dualisability, dual_solve, solve_lp};
use causalot_core::Error;
use clap::{Args, Subcommand};
use serde_json::json;

use super::{exponent, fmt};
use crate::parse::{self, SpaceArg};
use crate::report::{Report, Status};
use crate::Global;

#[derive(Subcommand, Debug)]
pub enum OtCmd {
    /// Exact l_p value and an optimal causal coupling.
    Solve(OtArgs),
    /// Kantorovich potentials and the duality gap.
    Dual(OtArgs),
    /// Dualisability class of the pair of measures.
    Classify(OtArgs),
}

#[derive(Args, Debug)]
pub struct OtArgs {
    /// Spacetime: `minkowski:n+1` or a space document.
    #[arg(long, value_parser = parse::space, default_value = "minkowski:1+1")]
    space: SpaceArg,
    /// Source point-measure document.
    #[arg(long)]
    mu: PathBuf,
    /// Target point-measure document.
    #[arg(long)]
    nu: PathBuf,
    /// Transport exponent `p` in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

pub fn run(cmd: OtCmd, g: &Global) -> Result<Report> {
    let (name, a) = match &cmd {
        OtCmd::Solve(a) => ("ot solve", a),
        OtCmd::Dual(a) => ("ot dual", a),
        OtCmd::Classify(a) => ("ot classify", a),
    };
    let m = parse::minkowski(&a.space)?;
    let (mu, nu) = (parse::point_measure(&a.mu)?, parse::point_measure(&a.nu)?);
    let p = exponent(a.p)?;
    match cmd {
        OtCmd::Solve(_) => {
            let r = solve_lp(&m, &mu, &nu, p)?;
            let rows = r.plan.as_ref().map(|plan| plan.support()).unwrap_or_default();
            super::write_csv(
                g.csv.as_deref(),
                &["i", "j", "mass"],
                rows.into_iter().map(|(i, j, w)| vec![i.to_string(), j.to_string(), fmt(w)]),
            )?;
            Report::new(name, Status::from_bool(r.is_feasible()), r)
        }
        OtCmd::Dual(_) => match dual_solve(&m, &mu, &nu, p) {
            Ok(d) => {
                let tol = g.tol(1e-8)?;
                let status = Status::from_bool(d.gap >= 0.0 && d.gap <= tol);
                let rows =
                    d.u.iter()
                        .enumerate()
                        .map(|(i, x)| vec!["u".to_string(), i.to_string(), fmt(*x)])
                        .chain(d.v.iter().enumerate().map(|(j, x)| vec!["v".to_string(), j.to_string(), fmt(*x)]))
                        .collect::<Vec<_>>();
                super::write_csv(g.csv.as_deref(), &["potential", "index", "value"], rows)?;
                Report::new(name, status, d)
            }
            Err(Error::NoCausalCoupling) => {
                Report::new(name, Status::Fail, json!({ "reason": Error::NoCausalCoupling.to_string() }))
            }
            Err(e) => Err(e.into()),
        },
        OtCmd::Classify(_) => Report::new(name, Status::Done, classify_dualisability(&m, &mu, &nu, p)?),
    }
}
