//! JSON report envelope and exit status.
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use causalot_core::curvature::Verdict;
use serde::Serialize;
use serde_json::Value;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Outcome of a command. `Done` marks commands that compute a value without
/// deciding a claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Done,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass | Status::Done => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }

    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
            Verdict::Inconclusive => Status::Inconclusive,
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, status: Status, result: impl Serialize) -> Result<Self> {
        Ok(Report { command: command.to_string(), status, result: serde_json::to_value(result)? })
    }

    /// Writes the pretty-printed report to `out`, or to stdout.
    pub fn emit(&self, out: Option<&Path>) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        match out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}
