use num_complex::Complex64;
use serde::Serialize;

use crate::arith::SieveTable;
use crate::error::{invalid, Error, Result};

use super::correlation::CorrelationTable;
use super::periodogram::trig_poly_values;

fn lag_correlations(values: &[i8], n: usize, h_max: usize) -> Vec<Complex64> {
    (0..=h_max)
        .map(|h| {
            let s: i64 = values[..n].iter().zip(&values[h..h + n]).map(|(&a, &b)| i64::from(a * b)).sum();
            Complex64::new(s as f64 / n as f64, 0.0)
        })
        .collect()
}

fn check_window(table: &SieveTable, n: u64, h_max: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid("N must be at least 1"));
    }
    let top = n + h_max;
    if top > table.n_max() {
        return Err(Error::OutOfRange { index: top, lo: 1, hi: table.n_max() });
    }
    Ok(())
}

/// ĉ_N(h) = (1/N) Σ_{n≤N} μ(n)μ(n+h) for 0 ≤ h ≤ h_max (full, not truncated, sums).
pub fn elliott_correlations(table: &SieveTable, n: u64, h_max: u64) -> Result<CorrelationTable> {
    check_window(table, n, h_max)?;
    let mu = table.mu_range(1, n + h_max)?;
    let f_hat = lag_correlations(&mu, n as usize, h_max as usize);
    Ok(CorrelationTable { n: n as usize, k_max: h_max as usize, f_hat })
}

/// (1/N) Σ_{n≤N} μ²(n)μ²(n+k) for 0 ≤ k ≤ k_max.
pub fn mu_squared_correlations(table: &SieveTable, n: u64, k_max: u64) -> Result<CorrelationTable> {
    check_window(table, n, k_max)?;
    let sq: Vec<i8> = table.mu_range(1, n + k_max)?.into_iter().map(|m| m * m).collect();
    let f_hat = lag_correlations(&sq, n as usize, k_max as usize);
    Ok(CorrelationTable { n: n as usize, k_max: k_max as usize, f_hat })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Flatness {
    /// (1/2π)∫|P_n| dx / ‖P_n‖₂
    pub l1_over_l2: f64,
    /// (1/2π)∫ | |P_n|²/‖P_n‖₂² − 1 | dx
    pub flatness_integral: f64,
}

fn mobius_poly(table: &SieveTable, n: u64, grid_size: usize, min_ratio: usize) -> Result<(Vec<Complex64>, f64)> {
    table.check_index(n)?;
    if grid_size < min_ratio.saturating_mul(n as usize) {
        return Err(invalid(format!("grid size {grid_size} must be at least {min_ratio}·{n}")));
    }
    let mu = table.mu_range(1, n)?;
    let l2_sq = mu.iter().filter(|&&m| m != 0).count() as f64;
    let coeffs: Vec<Complex64> = mu.iter().map(|&m| Complex64::new(f64::from(m), 0.0)).collect();
    Ok((trig_poly_values(&coeffs, grid_size)?, l2_sq))
}

/// L¹/L² ratio and flatness functional of P_n(x) = Σ_{k≤n} μ(k)e^{ikx} on a grid of size M ≥ 8n.
pub fn flatness(table: &SieveTable, n: u64, grid_size: usize) -> Result<Flatness> {
    let (values, l2_sq) = mobius_poly(table, n, grid_size, 8)?;
    if l2_sq == 0.0 {
        return Err(Error::Internal("‖P_n‖₂ vanished".into()));
    }
    let m = grid_size as f64;
    let l1 = values.iter().map(|z| z.norm()).sum::<f64>() / m;
    let flat = values.iter().map(|z| (z.norm_sqr() / l2_sq - 1.0).abs()).sum::<f64>() / m;
    Ok(Flatness { l1_over_l2: l1 / l2_sq.sqrt(), flatness_integral: flat })
}

/// max over θ = 2πi/M of |Σ_{k≤x} μ(k)e^{ikθ}| / x, with M ≥ 4x.
pub fn davenport_sup(table: &SieveTable, x: u64, grid_size: usize) -> Result<f64> {
    let (values, _) = mobius_poly(table, x, grid_size, 4)?;
    let sup = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(sup / x as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;

    #[test]
    fn elliott_lag_zero_is_density() {
        let t = sieve(10_010).unwrap();
        let c = elliott_correlations(&t, 10_000, 10).unwrap();
        let d = crate::arith::squarefree_density(&t, 10_000).unwrap();
        assert!((c.f_hat[0].re - d).abs() < 1e-15);
        assert!(elliott_correlations(&t, 10_001, 10).is_err());
    }

    #[test]
    fn mu_squared_correlation_direct() {
        let t = sieve(200).unwrap();
        let c = mu_squared_correlations(&t, 100, 5).unwrap();
        for k in 0..=5u64 {
            let s: u64 = (1..=100).map(|n| u64::from(t.mu_squared(n).unwrap() * t.mu_squared(n + k).unwrap())).sum();
            assert!((c.f_hat[k as usize].re - s as f64 / 100.0).abs() < 1e-15);
        }
    }

    #[test]
    fn flatness_single_term() {
        let t = sieve(10).unwrap();
        let f = flatness(&t, 1, 8).unwrap();
        assert!((f.l1_over_l2 - 1.0).abs() < 1e-15);
        assert!(f.flatness_integral.abs() < 1e-15);
        assert!(flatness(&t, 2, 8).is_err());
    }

    #[test]
    fn flatness_bounds() {
        let t = sieve(4096).unwrap();
        for n in [2u64, 10, 100, 1000] {
            let f = flatness(&t, n, 8 * 1024).unwrap();
            assert!(f.l1_over_l2 > 0.0 && f.l1_over_l2 <= 1.0 + 1e-12);
            assert!((0.0..=2.0).contains(&f.flatness_integral));
        }
    }

    #[test]
    fn davenport_small() {
        let t = sieve(10).unwrap();
        assert!((davenport_sup(&t, 1, 4).unwrap() - 1.0).abs() < 1e-15);
        assert!((davenport_sup(&t, 2, 8).unwrap() - 1.0).abs() < 1e-15);
        assert!(davenport_sup(&t, 2, 4).is_err());
    }
}
