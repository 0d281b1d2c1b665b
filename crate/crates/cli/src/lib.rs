//! Command-line frontend: argument parsing, configuration files, and report
//! output for the `causalot` binary.
use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};

mod commands;
pub mod config;
pub mod parse;
pub mod report;

use commands::{compare, converge, curv, geo, localize, ot, space};
use report::{Report, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(
    name = "causalot",
    version,
    about = "Causal optimal transport and synthetic timelike curvature checks",
    args_override_self = true,
    propagate_version = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub group: Group,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Flat `key = value` file of flag values; command-line flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed of every random stream; required by stochastic commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write the command's table or curve as CSV.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Tolerance of the verdict.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Monte Carlo sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Grid resolution per axis.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
}

impl Global {
    pub fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| anyhow!("--seed is required by this command"))
    }

    pub fn tol(&self, default: f64) -> Result<f64> {
        let tol = self.tol.unwrap_or(default);
        if !(tol > 0.0 && tol.is_finite()) {
            bail!("--tol must be positive, got {tol}");
        }
        Ok(tol)
    }

    pub fn samples(&self, default: usize) -> Result<usize> {
        match self.samples.unwrap_or(default) {
            0 => bail!("--samples must be positive"),
            n => Ok(n),
        }
    }

    pub fn grid(&self, default: usize) -> Result<usize> {
        match self.grid.unwrap_or(default) {
            0 => bail!("--grid must be positive"),
            n => Ok(n),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Spaces: axiom validation and sprinkling.
    #[command(subcommand)]
    Space(space::SpaceCmd),
    /// Optimal transport between point measures.
    #[command(subcommand)]
    Ot(ot::OtCmd),
    /// Geodesics of measures and entropy along them.
    #[command(subcommand)]
    Geo(geo::GeoCmd),
    /// Timelike curvature bounds.
    #[command(subcommand)]
    Curv(curv::CurvCmd),
    /// Comparison geometry.
    #[command(subcommand)]
    Compare(compare::CompareCmd),
    /// Localization along rays of an achronal set.
    #[command(subcommand)]
    Localize(localize::LocalizeCmd),
    /// Convergence of sprinklings.
    #[command(subcommand)]
    Converge(converge::ConvergeCmd),
}

fn dispatch(cli: Cli) -> Result<Report> {
    let g = &cli.global;
    match cli.group {
        Group::Space(c) => space::run(c, g),
        Group::Ot(c) => ot::run(c, g),
        Group::Geo(c) => geo::run(c, g),
        Group::Curv(c) => curv::run(c, g),
        Group::Compare(c) => compare::run(c, g),
        Group::Localize(c) => localize::run(c, g),
        Group::Converge(c) => converge::run(c, g),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code: 0 pass, 1 fail, 2 inconclusive, 64 usage or input error.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<String> = argv.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let argv = match config::expand(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let out = cli.global.out.clone();
    match dispatch(cli).and_then(|r| r.emit(out.as_deref()).map(|_| r.status)) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
