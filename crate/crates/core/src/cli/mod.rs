//! Run configuration and the experiment driver behind the `mlab` binary.
//!
//! Every parameter may come from a command-line flag or from a TOML config
//! file (`--config`); flags win. Each run writes its data files, a gnuplot
//! script per data file, and `meta.json` into the output directory.

mod args;
mod run;

pub use args::{Cli, CommandArgs, Format, Params};
pub use run::{run, RunStatus};

use std::path::PathBuf;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Sieve,
    Corr,
    Spectrum,
    Mirsky,
    Affinity,
    Flatness,
    Davenport,
    Entropy,
    Simulate,
    Concentration,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sieve => "sieve",
            Command::Corr => "corr",
            Command::Spectrum => "spectrum",
            Command::Mirsky => "mirsky",
            Command::Affinity => "affinity",
            Command::Flatness => "flatness",
            Command::Davenport => "davenport",
            Command::Entropy => "entropy",
            Command::Simulate => "simulate",
            Command::Concentration => "concentration",
            Command::Report => "report",
        }
    }
}

/// A fully resolved invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub out_dir: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Merges flags over the optional config file and validates the result.
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let (command, flags) = cli.command.split();
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| invalid(format!("config file {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let cfg = RunConfig {
            command,
            params: flags.or(file.params),
            out_dir: cli.out_dir.or(file.out_dir).unwrap_or_else(|| PathBuf::from(".")),
            cache_dir: cli.cache_dir.or(file.cache_dir),
            format: cli.format.or(file.format).unwrap_or(Format::Csv),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        let positive = [
            ("n", p.n.map(|v| v as f64)),
            ("kmax", p.kmax.map(|v| v as f64 + 1.0)),
            ("grid", p.grid.map(|v| v as f64)),
            ("prime-cutoff", p.prime_cutoff.map(|v| v as f64)),
            ("d-max", p.d_max.map(|v| v as f64)),
            ("trials", p.trials.map(|v| v as f64)),
            ("delta", p.delta),
            ("slack", p.slack),
            ("bins", p.bins.map(f64::from)),
        ];
        for (name, v) in positive {
            if let Some(v) = v {
                if !(v > 0.0) {
                    return Err(invalid(format!("--{name} must be positive")));
                }
            }
        }
        if let Some(g) = p.grid {
            if !g.is_power_of_two() {
                return Err(invalid("--grid must be a power of two"));
            }
        }
        if self.out_dir.exists() && !self.out_dir.is_dir() {
            return Err(invalid(format!("{} is not a directory", self.out_dir.display())));
        }
        Ok(())
    }
}

#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    out_dir: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
    format: Option<Format>,
    #[serde(flatten)]
    params: Params,
}

/// Parses `a..b` (inclusive) or a comma list.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    let bad = || invalid(format!("cannot parse integer list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if b < a {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

/// Parses a comma list where `a,b,...,c` continues the arithmetic progression a, b up to c.
pub fn parse_progression(s: &str) -> Result<Vec<u64>> {
    let bad = || invalid(format!("cannot parse list {s:?}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.iter().position(|&p| p == "...") {
        None => parts.iter().map(|x| x.parse().map_err(|_| bad())).collect(),
        Some(i) if i >= 2 && i + 2 == parts.len() => {
            let head: Vec<u64> = parts[..i].iter().map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?;
            let end: u64 = parts[i + 1].parse().map_err(|_| bad())?;
            let (a, b) = (head[i - 2], head[i - 1]);
            if b <= a || head.windows(2).any(|w| w[1] - w[0] != b - a) {
                return Err(bad());
            }
            let mut out = head;
            let mut next = b + (b - a);
            while next <= end {
                out.push(next);
                next += b - a;
            }
            Ok(out)
        }
        Some(_) => Err(bad()),
    }
}

/// Parses `lo:hi` as the powers 2^lo..=2^hi, or a comma list of N values.
pub fn parse_power_grid(s: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = s.split_once(':') {
        let bad = || invalid(format!("cannot parse exponent range {s:?}"));
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if b < a || b > 40 {
            return Err(bad());
        }
        return Ok((a..=b).map(|e| 1u64 << e).collect());
    }
    parse_u64_list(s)
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| invalid(format!("cannot parse number list {s:?}"))))
        .collect()
}

/// Exit status for an error: 2 for validation problems, 1 otherwise.
pub fn exit_code(err: &Error) -> u8 {
    // Bad inputs, unusable paths and stale caches are all rejected configurations;
    // only failures inside a well-formed run get the generic code.
    match err {
        Error::Internal(_) | Error::Allocation { .. } => 1,
        _ => 2,
    }
}
