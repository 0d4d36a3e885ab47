use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::SieveTable;
use crate::dynsys::{block_spanning_count, SequenceGenerator, DEFAULT_BINS};
use crate::error::{invalid, Error, Result};
use crate::numeric::ls_slope;
use crate::spectral::SlidingDot;

use super::concentration::mc_slack;
use super::RandomMoebiusStream;

/// Exact split of (1/N) Σ_{n<N} X_n, X_n = g_n·μ_rand(n+1), into the average
/// of m-block averages plus a boundary remainder.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Decomposition {
    pub direct: Complex64,
    pub block_averaged: Complex64,
    /// (1/(Nm)) Σ_{j<m} Σ_{n<j} (X_n − X_{n+N})
    pub remainder: Complex64,
    /// (m/N)·sup|g|
    pub bound: f64,
}

pub fn remainder_decomposition(
    g: &[Complex64],
    stream: &RandomMoebiusStream<'_>,
    n: usize,
    m: usize,
) -> Result<Decomposition> {
    if n == 0 || m == 0 {
        return Err(invalid("N and m must be positive"));
    }
    let len = n + m - 1;
    if g.len() < len {
        return Err(invalid(format!("need {len} sequence terms, got {}", g.len())));
    }
    let w = stream.sample(1, len as u64)?;
    let x: Vec<Complex64> = g[..len].iter().zip(&w).map(|(a, &b)| a * f64::from(b)).collect();
    let (nf, mf) = (n as f64, m as f64);
    let direct: Complex64 = x[..n].iter().sum::<Complex64>() / nf;
    // Block averages Y_k = (1/m) Σ_{j<m} X_{k+j} by a running window.
    let mut window: Complex64 = x[..m].iter().sum();
    let mut total = window;
    for k in 1..n {
        window += x[k + m - 1] - x[k - 1];
        total += window;
    }
    let block_averaged = total / (nf * mf);
    let mut r = Complex64::new(0.0, 0.0);
    for j in 0..m {
        for i in 0..j {
            r += x[i] - x[i + n];
        }
    }
    let sup = g[..len].iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(Decomposition { direct, block_averaged, remainder: r / (nf * mf), bound: mf / nf * sup })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct UnionBoundConfig {
    /// Start index of the μ_rand block.
    pub n: u64,
    pub m: usize,
    pub delta: f64,
    pub trials: u64,
    /// Length of the orbit prefix whose m-windows form the spanning proxy; ≥ 4m.
    pub prefix_len: usize,
    pub bins: u32,
}

impl UnionBoundConfig {
    pub fn new(m: usize, delta: f64, trials: u64) -> Self {
        Self { n: 1, m, delta, trials, prefix_len: 8 * m, bins: DEFAULT_BINS }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionBoundReport {
    pub system: String,
    pub m: usize,
    pub delta: f64,
    /// δ²/‖f‖∞².
    pub eta: f64,
    /// Distinct m-blocks observed in the prefix.
    pub r_m: u64,
    pub spanning_within_budget: bool,
    pub trials: u64,
    pub exceedances: u64,
    pub empirical: f64,
    /// min(1, r(m)·2e^{−2mδ²})
    pub bound: f64,
    pub mc_slack: f64,
    pub max_sup: f64,
    pub passes: bool,
}

/// Frequency over seeds of sup_blocks |Y_n^m| > 3δ against the union bound r(m)·2e^{−2mδ²}.
pub fn union_bound_experiment(
    system: &SequenceGenerator,
    table: &SieveTable,
    cfg: &UnionBoundConfig,
) -> Result<UnionBoundReport> {
    if !system.has_zero_entropy() {
        return Err(Error::PositiveEntropy(system.to_string()));
    }
    let UnionBoundConfig { n, m, delta, trials, prefix_len, bins } = *cfg;
    if m == 0 || !(delta > 0.0) || trials == 0 {
        return Err(invalid("m, δ and trials must be positive"));
    }
    if prefix_len < 4 * m {
        return Err(invalid(format!("prefix length {prefix_len} must be at least 4m = {}", 4 * m)));
    }
    let last = n + m as u64 - 1;
    if n == 0 || last > table.n_max() {
        return Err(Error::OutOfRange { index: last, lo: 1, hi: table.n_max() });
    }
    let prefix = system.values(0, prefix_len);
    let sup_f = prefix.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let eta = delta * delta / (sup_f * sup_f);
    let r_m = block_spanning_count(&system.symbols(0, prefix_len, bins)?, m)?;
    let correlator = SlidingDot::new(&prefix, m)?;

    let sups = (0..trials)
        .into_par_iter()
        .map(|seed| {
            let w: Vec<Complex64> = RandomMoebiusStream::new(seed, table)
                .sample(n, last)?
                .into_iter()
                .map(|v| Complex64::new(f64::from(v), 0.0))
                .collect();
            let c = correlator.apply(&w)?;
            Ok(c.iter().map(|z| z.norm()).fold(0.0, f64::max) / m as f64)
        })
        .collect::<Result<Vec<f64>>>()?;

    let exceedances = sups.iter().filter(|&&s| s > 3.0 * delta).count() as u64;
    let empirical = exceedances as f64 / trials as f64;
    let bound = (r_m as f64 * 2.0 * (-2.0 * m as f64 * delta * delta).exp()).min(1.0);
    let slack = mc_slack(bound, trials);
    Ok(UnionBoundReport {
        system: system.to_string(),
        m,
        delta,
        eta,
        r_m,
        spanning_within_budget: (r_m as f64) < (eta * m as f64).exp(),
        trials,
        exceedances,
        empirical,
        bound,
        mc_slack: slack,
        max_sup: sups.iter().copied().fold(0.0, f64::max),
        passes: empirical <= bound + slack,
    })
}

/// Σ_{q≤q_max} 1/q², the summable sequence fed to Borel–Cantelli, with its tail bound 1/q_max.
pub fn borel_cantelli_partial_sum(q_max: u64) -> (f64, f64) {
    let s = (1..=q_max).rev().map(|q| 1.0 / (q as f64 * q as f64)).sum();
    (s, 1.0 / q_max.max(1) as f64)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedDecay {
    pub seed: u64,
    pub s_n: Vec<f64>,
    /// Fit over the grid points with S_N ≠ 0; `None` when fewer than 3 remain.
    pub slope: Option<f64>,
    pub zero_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub system: String,
    pub n_grid: Vec<u64>,
    pub seeds: Vec<SeedDecay>,
    /// Grid points left out of the fits because S_N was exactly zero.
    pub excluded_points: usize,
    /// Seeds with too few nonzero S_N to fit.
    pub excluded: usize,
    pub mean_slope: Option<f64>,
}

/// Per seed, S_N = |(1/N) Σ_{n≤N} g_n·μ_rand(n)| along `n_grid`, and the
/// least-squares slope of log S_N against log N; slopes averaged over seeds.
pub fn orthogonality_decay(
    system: &SequenceGenerator,
    table: &SieveTable,
    seeds: &[u64],
    n_grid: &[u64],
) -> Result<DecayReport> {
    let top = n_grid.last().copied().unwrap_or(0) as usize;
    orthogonality_decay_values(&system.to_string(), &system.values(1, top), table, seeds, n_grid)
}

/// As [`orthogonality_decay`] for explicit values g_1, g_2, … (`g[i]` is g_{i+1}).
pub fn orthogonality_decay_values(
    label: &str,
    g: &[Complex64],
    table: &SieveTable,
    seeds: &[u64],
    n_grid: &[u64],
) -> Result<DecayReport> {
    if n_grid.len() < 4 {
        return Err(invalid("need at least 4 grid points"));
    }
    if n_grid[0] == 0 || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("N grid must be positive and strictly increasing"));
    }
    let top = *n_grid.last().unwrap();
    table.check_index(top)?;
    if (g.len() as u64) < top {
        return Err(invalid(format!("need {top} sequence terms, got {}", g.len())));
    }
    let log_n: Vec<f64> = n_grid.iter().map(|&n| (n as f64).ln()).collect();

    let per_seed = seeds
        .par_iter()
        .map(|&seed| {
            let w = RandomMoebiusStream::new(seed, table).sample(1, top)?;
            let mut s_n = Vec::with_capacity(n_grid.len());
            let mut acc = Complex64::new(0.0, 0.0);
            let mut done = 0usize;
            for &n in n_grid {
                for i in done..n as usize {
                    if w[i] != 0 {
                        acc += g[i] * f64::from(w[i]);
                    }
                }
                done = n as usize;
                s_n.push(acc.norm() / n as f64);
            }
            let (xs, ys): (Vec<f64>, Vec<f64>) =
                log_n.iter().zip(&s_n).filter(|(_, &s)| s > 0.0).map(|(&x, &s)| (x, s.ln())).unzip();
            let zero_points = s_n.len() - xs.len();
            let slope = if xs.len() >= 3 { ls_slope(&xs, &ys) } else { None };
            Ok(SeedDecay { seed, s_n, slope, zero_points })
        })
        .collect::<Result<Vec<_>>>()?;

    let slopes: Vec<f64> = per_seed.iter().filter_map(|s| s.slope).collect();
    let excluded = per_seed.len() - slopes.len();
    let excluded_points = per_seed.iter().map(|s| s.zero_points).sum();
    let mean_slope = (!slopes.is_empty()).then(|| slopes.iter().sum::<f64>() / slopes.len() as f64);
    Ok(DecayReport { system: label.to_string(), n_grid: n_grid.to_vec(), seeds: per_seed, excluded_points, excluded, mean_slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;

    #[test]
    fn decomposition_is_exact_and_bounded() {
        let t = sieve(5000).unwrap();
        let g = SequenceGenerator::ThueMorse.generate(4000).unwrap();
        for seed in 0..4 {
            let s = RandomMoebiusStream::new(seed, &t);
            for (n, m) in [(1000, 1), (1000, 17), (3000, 500)] {
                let d = remainder_decomposition(&g, &s, n, m).unwrap();
                assert!((d.direct - d.block_averaged - d.remainder).norm() < 1e-12);
                assert!(d.remainder.norm() <= d.bound);
            }
        }
    }

    #[test]
    fn positive_entropy_rejected() {
        let t = sieve(1000).unwrap();
        let r = union_bound_experiment(&SequenceGenerator::RandomShift { seed: 0 }, &t, &UnionBoundConfig::new(10, 0.1, 5));
        assert!(matches!(r, Err(Error::PositiveEntropy(_))));
    }

    #[test]
    fn large_delta_never_exceeds() {
        let t = sieve(1000).unwrap();
        let r = union_bound_experiment(&SequenceGenerator::ThueMorse, &t, &UnionBoundConfig::new(50, 1.0, 20)).unwrap();
        assert_eq!(r.exceedances, 0);
        assert!(r.max_sup <= 1.0 + 1e-12);
        assert!(r.passes);
    }

    #[test]
    fn constant_system_has_one_block() {
        let t = sieve(20_000).unwrap();
        let r = union_bound_experiment(&SequenceGenerator::Constant, &t, &UnionBoundConfig::new(2_000, 0.1, 50)).unwrap();
        assert_eq!(r.r_m, 1);
        assert!(r.passes);
        assert!(union_bound_experiment(&SequenceGenerator::Constant, &t, &UnionBoundConfig::new(30_000, 0.1, 5)).is_err());
    }

    #[test]
    fn zero_sequence_is_excluded() {
        let t = sieve(1 << 12).unwrap();
        let zero = vec![Complex64::new(0.0, 0.0); 2048];
        let r = orthogonality_decay_values("zero", &zero, &t, &[0, 1, 2], &[256, 512, 1024, 2048]).unwrap();
        assert_eq!(r.excluded, 3);
        assert!(r.mean_slope.is_none());
        assert!(orthogonality_decay_values("zero", &zero, &t, &[0], &[256, 512, 1024]).is_err());
        assert!(orthogonality_decay_values("zero", &zero, &t, &[0], &[256, 512, 1024, 4096]).is_err());
    }

    #[test]
    fn borel_cantelli() {
        let (s, tail) = borel_cantelli_partial_sum(1_000_000);
        assert!((s - std::f64::consts::PI.powi(2) / 6.0).abs() <= tail);
    }
}
