use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

use super::fft;

/// Truncated empirical correlations
/// f̂[k] = (1/n) Σ_{j=0}^{n−1−k} g_{j+k}·conj(g_j), for 0 ≤ k ≤ k_max.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTable {
    pub n: usize,
    pub k_max: usize,
    pub f_hat: Vec<Complex64>,
}

impl CorrelationTable {
    pub fn get(&self, k: usize) -> Option<Complex64> {
        self.f_hat.get(k).copied()
    }

    /// Boundary slack k·sup|g|²/n separating the truncated sum from the full one.
    pub fn truncation_slack(&self, k: usize, sup_abs: f64) -> f64 {
        k as f64 * sup_abs * sup_abs / self.n as f64
    }

    /// Check |f̂[k]| ≤ f̂[0] + k·sup|g|²/n for every lag.
    pub fn within_slack(&self, sup_abs: f64) -> bool {
        let f0 = self.f_hat[0].re;
        self.f_hat
            .iter()
            .enumerate()
            .all(|(k, c)| c.norm() <= f0 + self.truncation_slack(k, sup_abs) + 1e-12)
    }

    /// Hermitian Toeplitz matrix T[a][b] = F(a − b) with F(−k) = conj(F(k)).
    pub fn toeplitz(&self) -> Vec<Vec<Complex64>> {
        let size = self.k_max + 1;
        (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| if a >= b { self.f_hat[a - b] } else { self.f_hat[b - a].conj() })
                    .collect()
            })
            .collect()
    }
}

fn check_args(n: usize, k_max: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("sequence must be nonempty"));
    }
    if k_max >= n {
        return Err(invalid(format!("k_max = {k_max} must be below the sample length {n}")));
    }
    Ok(())
}

/// Truncated autocorrelation via zero-padded FFT, O(n log n).
pub fn autocorrelation(g: &[Complex64], k_max: usize) -> Result<CorrelationTable> {
    let n = g.len();
    check_args(n, k_max)?;
    let len = (n + k_max + 1).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    buf[..n].copy_from_slice(g);
    fft::forward(&mut buf);
    for z in buf.iter_mut() {
        *z = Complex64::new(z.norm_sqr(), 0.0);
    }
    fft::inverse(&mut buf);
    // IDFT(|X|²)[k] = Σ_j g_{j+k}·conj(g_j) as long as no wraparound reaches lag k.
    let scale = 1.0 / (len as f64 * n as f64);
    let mut f_hat: Vec<Complex64> = buf[..=k_max].iter().map(|z| z * scale).collect();
    f_hat[0].im = 0.0;
    Ok(CorrelationTable { n, k_max, f_hat })
}

/// Reference O(n·k_max) summation of the same quantity.
pub fn autocorrelation_direct(g: &[Complex64], k_max: usize) -> Result<CorrelationTable> {
    let n = g.len();
    check_args(n, k_max)?;
    let f_hat = (0..=k_max)
        .map(|k| {
            let s: Complex64 = (0..n - k).map(|j| g[j + k] * g[j].conj()).sum();
            s / n as f64
        })
        .collect();
    Ok(CorrelationTable { n, k_max, f_hat })
}

/// Sliding dot products c[i] = Σ_{j<m} long[i+j]·short[j] for
/// 0 ≤ i ≤ len(long) − m, with the transform of `long` computed once.
pub struct SlidingDot {
    spectrum: Vec<Complex64>,
    long_len: usize,
    window: usize,
}

impl SlidingDot {
    pub fn new(long: &[Complex64], window: usize) -> Result<Self> {
        let l = long.len();
        if window == 0 || window > l {
            return Err(invalid(format!("window length {window} must be in 1..={l}")));
        }
        let len = (l + window).next_power_of_two();
        let mut spectrum = vec![Complex64::new(0.0, 0.0); len];
        spectrum[..l].copy_from_slice(long);
        fft::forward(&mut spectrum);
        Ok(Self { spectrum, long_len: l, window })
    }

    pub fn apply(&self, short: &[Complex64]) -> Result<Vec<Complex64>> {
        let m = self.window;
        if short.len() != m {
            return Err(invalid(format!("window has length {}, expected {m}", short.len())));
        }
        let len = self.spectrum.len();
        // Reversed window turns correlation into convolution.
        let mut b = vec![Complex64::new(0.0, 0.0); len];
        for (j, &s) in short.iter().enumerate() {
            b[m - 1 - j] = s;
        }
        fft::forward(&mut b);
        for (x, y) in b.iter_mut().zip(&self.spectrum) {
            *x *= y;
        }
        fft::inverse(&mut b);
        let scale = 1.0 / len as f64;
        Ok(b[m - 1..self.long_len].iter().map(|z| z * scale).collect())
    }
}

pub fn sliding_dot(long: &[Complex64], short: &[Complex64]) -> Result<Vec<Complex64>> {
    SlidingDot::new(long, short.len())?.apply(short)
}
