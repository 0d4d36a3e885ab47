use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::measures::CircleMeasure;
use crate::numeric::{compensated_sum, is_power_of_two};

use super::fft;

/// Periodogram density ρ(2πi/M) = |(1/√n) Σ_j g_j e^{ij·2πi/M}|² on a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Periodogram {
    pub grid_size: usize,
    pub n: usize,
    pub density: Vec<f64>,
}

impl Periodogram {
    /// Trapezoid value of (1/2π)∫ρ dx; equals (1/n)Σ|g_j|² for M ≥ n.
    pub fn mass(&self) -> f64 {
        compensated_sum(self.density.iter().copied()) / self.grid_size as f64
    }

    /// Grid value of (1/2π)∫ρ(x) e^{−ikx} dx, i.e. the truncated correlation at lag k.
    pub fn fourier_coefficient(&self, k: i64) -> Complex64 {
        let m = self.grid_size as i64;
        let s: Complex64 = self
            .density
            .iter()
            .enumerate()
            .map(|(i, &rho)| {
                let phase = (k.rem_euclid(m) * i as i64).rem_euclid(m) as f64 / m as f64;
                Complex64::from_polar(rho, -std::f64::consts::TAU * phase)
            })
            .sum();
        s / m as f64
    }

    pub fn theta(&self, i: usize) -> f64 {
        std::f64::consts::TAU * i as f64 / self.grid_size as f64
    }

    /// The periodogram as a purely absolutely continuous circle measure.
    pub fn to_measure(&self) -> Result<CircleMeasure> {
        CircleMeasure::new(Vec::new(), Some(self.density.clone()))
    }
}

/// Values of Σ_j g_j e^{ijθ} at θ = 2πi/M, via one zero-padded inverse FFT.
pub fn trig_poly_values(g: &[Complex64], grid_size: usize) -> Result<Vec<Complex64>> {
    if g.is_empty() {
        return Err(invalid("sequence must be nonempty"));
    }
    if !is_power_of_two(grid_size) {
        return Err(invalid(format!("grid size {grid_size} must be a power of two")));
    }
    if grid_size < g.len() {
        return Err(invalid(format!("grid size {grid_size} is below the sequence length {}", g.len())));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); grid_size];
    buf[..g.len()].copy_from_slice(g);
    fft::inverse(&mut buf);
    Ok(buf)
}

pub fn periodogram(g: &[Complex64], grid_size: usize) -> Result<Periodogram> {
    let n = g.len();
    let values = trig_poly_values(g, grid_size)?;
    let density = values.iter().map(|z| z.norm_sqr() / n as f64).collect();
    Ok(Periodogram { grid_size, n, density })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn single_term_is_flat() {
        let p = periodogram(&[c(1.0)], 4).unwrap();
        for d in &p.density {
            assert!((d - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn two_ones_closed_form() {
        let p = periodogram(&[c(1.0), c(1.0)], 4).unwrap();
        let expect = [2.0, 1.0, 0.0, 1.0];
        for (d, e) in p.density.iter().zip(expect) {
            assert!((d - e).abs() < 1e-14);
        }
    }

    #[test]
    fn grid_rules() {
        assert!(periodogram(&[c(1.0); 5], 4).is_err());
        assert!(periodogram(&[c(1.0); 3], 6).is_err());
    }

    #[test]
    fn coefficients_are_truncated_correlations() {
        let g: Vec<Complex64> = (0..50).map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64).cos())).collect();
        let p = periodogram(&g, 128).unwrap();
        let t = super::super::autocorrelation_direct(&g, 10).unwrap();
        for k in 0..=10 {
            assert!((p.fourier_coefficient(k as i64) - t.f_hat[k]).norm() < 1e-12);
        }
    }
}
