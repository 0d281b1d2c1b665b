//! Flat `key = value` configuration files.
//!
//! Each non-empty line not starting with `#` holds one `key = value` pair,
//! where `key` is the long name of a command-line flag. A line
//! `include = path` splices another file in place; relative paths resolve
//! against the directory of the including file. Later pairs override earlier
//! ones, and flags given on the command line override the file.
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

pub fn load(path: &Path) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    let mut stack = BTreeSet::new();
    read_into(path, &mut pairs, &mut stack)?;
    // keep only the last value of each key, in first-seen order
    let mut merged: Vec<(String, String)> = Vec::new();
    for (k, v) in pairs {
        match merged.iter_mut().find(|(key, _)| *key == k) {
            Some(slot) => slot.1 = v,
            None => merged.push((k, v)),
        }
    }
    Ok(merged)
}

fn read_into(path: &Path, pairs: &mut Vec<(String, String)>, stack: &mut BTreeSet<PathBuf>) -> Result<()> {
    let canonical = path.canonicalize().with_context(|| format!("cannot open config file {}", path.display()))?;
    if !stack.insert(canonical.clone()) {
        bail!("config include cycle through {}", path.display());
    }
    let text = std::fs::read_to_string(&canonical).with_context(|| format!("cannot read {}", path.display()))?;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{}:{}: expected `key = value`, got `{line}`", path.display(), n + 1);
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key.starts_with('-') || key.contains(char::is_whitespace) {
            bail!("{}:{}: invalid key `{key}`", path.display(), n + 1);
        }
        if key == "include" {
            let base = canonical.parent().unwrap_or(Path::new("."));
            read_into(&base.join(value), pairs, stack)?;
        } else if key == "config" {
            bail!("{}:{}: use `include` to read another file", path.display(), n + 1);
        } else {
            pairs.push((key.to_string(), value.to_string()));
        }
    }
    stack.remove(&canonical);
    Ok(())
}

/// Flags that take a value and may precede the subcommand words.
const GLOBAL_VALUED: [&str; 7] = ["--config", "--seed", "--out", "--csv", "--tol", "--samples", "--grid"];

/// Splices the pairs of the `--config` file, if any, right after the
/// subcommand words so that flags given later on the command line win.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>> {
    let mut config = None;
    let mut words = Vec::new();
    let mut i = 1;
    while i < argv.len() {
        let a = &argv[i];
        if let Some(rest) = a.strip_prefix("--config=") {
            config = Some(rest.to_string());
        } else if a == "--config" {
            config = argv.get(i + 1).cloned();
            i += 1;
        } else if a.starts_with("--") {
            if !a.contains('=') && GLOBAL_VALUED.contains(&a.as_str()) {
                i += 1;
            }
        } else if words.len() < 2 && !a.starts_with('-') {
            words.push(i);
        }
        i += 1;
    }
    let Some(path) = config else {
        return Ok(argv);
    };
    let pairs = load(Path::new(&path))?;
    let at = words.last().map_or(argv.len(), |w| w + 1);
    let mut out: Vec<String> = argv[..at].to_vec();
    out.extend(pairs.into_iter().map(|(k, v)| format!("--{k}={v}")));
    out.extend_from_slice(&argv[at..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn includes_and_overrides() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("base.cfg"), "K = 1\nN = 3\n").unwrap();
        std::fs::write(dir.path().join("run.cfg"), "# experiment\ninclude = base.cfg\nN = 2\nH0 = 0\n").unwrap();
        let pairs = load(&dir.path().join("run.cfg")).unwrap();
        assert_eq!(pairs, vec![("K".into(), "1".into()), ("N".into(), "2".into()), ("H0".into(), "0".into())]);
    }

    #[test]
    fn include_cycles_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.cfg"), "include = b.cfg\n").unwrap();
        std::fs::write(dir.path().join("b.cfg"), "include = a.cfg\n").unwrap();
        assert!(load(&dir.path().join("a.cfg")).is_err());
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("bad.cfg"), "K 1\n").unwrap();
        assert!(load(&dir.path().join("bad.cfg")).is_err());
    }

    #[test]
    fn pairs_land_after_the_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("c.cfg");
        std::fs::write(&cfg, "K = 1\n").unwrap();
        let argv: Vec<String> = ["causalot", "--config", cfg.to_str().unwrap(), "compare", "hawking", "--K", "2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let out = expand(argv).unwrap();
        assert_eq!(&out[3..], ["compare", "hawking", "--K=1", "--K", "2"]);
    }
}
