use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use super::Command;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mlab", version, about = "Möbius correlation and spectral-measure experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,

    /// Directory receiving data files, plot scripts and meta.json.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,

    /// Directory holding MUSV0001 sieve caches.
    #[arg(long, global = true, env = "MLAB_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// TOML file with default parameters; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Sieve μ, ω up to --n, fill the cache and tabulate Mertens, Landau and squarefree sums.
    Sieve(Params),
    /// Truncated autocorrelation of a sequence.
    Corr(Params),
    /// Periodogram of a sequence, or with --d-max the atomic spectrum of μ².
    Spectrum(Params),
    /// μ² correlations against the Mirsky coefficients.
    Mirsky(Params),
    /// Affinity and Hellinger distance between two measure JSON files.
    Affinity(Params),
    /// L¹/L² ratio and flatness functional of the Möbius polynomial.
    Flatness(Params),
    /// Normalized sup of Möbius exponential sums.
    Davenport(Params),
    /// Block-complexity entropy estimate of a symbolic system.
    Entropy(Params),
    /// Random Möbius orthogonality decay across seeds.
    Simulate(Params),
    /// Hoeffding–Azuma tail check by Monte Carlo.
    Concentration(Params),
    /// Run a named suite and report pass/fail.
    Report(Params),
}

impl CommandArgs {
    pub fn split(self) -> (Command, Params) {
        match self {
            CommandArgs::Sieve(p) => (Command::Sieve, p),
            CommandArgs::Corr(p) => (Command::Corr, p),
            CommandArgs::Spectrum(p) => (Command::Spectrum, p),
            CommandArgs::Mirsky(p) => (Command::Mirsky, p),
            CommandArgs::Affinity(p) => (Command::Affinity, p),
            CommandArgs::Flatness(p) => (Command::Flatness, p),
            CommandArgs::Davenport(p) => (Command::Davenport, p),
            CommandArgs::Entropy(p) => (Command::Entropy, p),
            CommandArgs::Simulate(p) => (Command::Simulate, p),
            CommandArgs::Concentration(p) => (Command::Concentration, p),
            CommandArgs::Report(p) => (Command::Report, p),
        }
    }
}

/// Parameters shared by all subcommands; each reads the ones it needs.
#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Sample length or sieve bound.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Grid size (power of two).
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub prime_cutoff: Option<u64>,
    #[arg(long)]
    pub d_max: Option<u64>,
    /// Seeds as `a..b` or a comma list.
    #[arg(long)]
    pub seeds: Option<String>,
    /// N grid as `lo:hi` (powers of two) or a comma list.
    #[arg(long)]
    pub ngrid: Option<String>,
    /// Block lengths, e.g. `8,16,...,256`.
    #[arg(long)]
    pub m: Option<String>,
    /// Thresholds in units of √(Σc²).
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// thue_morse, rotation, quadratic_weyl, q_multiplicative, random_shift, constant.
    #[arg(long)]
    pub system: Option<String>,
    /// mu, mu2, or a system name.
    #[arg(long)]
    pub sequence: Option<String>,
    /// Davenport lengths as a comma list.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub measure_a: Option<PathBuf>,
    #[arg(long)]
    pub measure_b: Option<PathBuf>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub slack: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Phase bins for circle-valued systems.
    #[arg(long)]
    pub bins: Option<u32>,
    #[arg(long)]
    pub suite: Option<String>,
    /// Output file name replacing the command's default.
    #[arg(long)]
    pub out: Option<String>,
}

impl Params {
    /// Field-wise `self.or(other)`.
    pub fn or(self, other: Params) -> Params {
        Params {
            n: self.n.or(other.n),
            kmax: self.kmax.or(other.kmax),
            grid: self.grid.or(other.grid),
            prime_cutoff: self.prime_cutoff.or(other.prime_cutoff),
            d_max: self.d_max.or(other.d_max),
            seeds: self.seeds.or(other.seeds),
            ngrid: self.ngrid.or(other.ngrid),
            m: self.m.or(other.m),
            t: self.t.or(other.t),
            trials: self.trials.or(other.trials),
            system: self.system.or(other.system),
            sequence: self.sequence.or(other.sequence),
            x: self.x.or(other.x),
            measure_a: self.measure_a.or(other.measure_a),
            measure_b: self.measure_b.or(other.measure_b),
            delta: self.delta.or(other.delta),
            slack: self.slack.or(other.slack),
            seed: self.seed.or(other.seed),
            bins: self.bins.or(other.bins),
            suite: self.suite.or(other.suite),
            out: self.out.or(other.out),
        }
    }
}
