//! Finite-n checks of inequalities relating cross sums, periodogram affinities
//! and L¹ norms of normalized trigonometric polynomials.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spectral::{periodogram, trig_poly_values};

use super::{affinity, CircleMeasure};

/// Tolerances for finite-sample checks of asymptotic inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub slack: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { slack: 0.05 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BellowLosertRow {
    pub n: usize,
    /// |(1/n) Σ g_j·conj(h_j)|
    pub cross_sum: f64,
    /// Affinity of the two periodogram measures.
    pub affinity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BellowLosertReport {
    pub rows: Vec<BellowLosertRow>,
    pub slack: f64,
    /// cross_sum ≤ affinity + slack at the largest n.
    pub holds: bool,
}

/// Grid large enough that trapezoid sums of products of two degree-(n−1)
/// polynomials are exact.
fn product_grid(n: usize) -> usize {
    (2 * n).next_power_of_two()
}

pub fn bellow_losert_check(
    g: &[Complex64],
    h: &[Complex64],
    n_list: &[usize],
    cfg: CheckConfig,
) -> Result<BellowLosertReport> {
    let n_top = *n_list.iter().max().ok_or_else(|| invalid("n_list is empty"))?;
    if n_list.contains(&0) {
        return Err(invalid("lengths must be positive"));
    }
    if g.len() < n_top || h.len() < n_top {
        return Err(invalid(format!("sequences shorter than n = {n_top}")));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let (gs, hs) = (&g[..n], &h[..n]);
        let cross: Complex64 = gs.iter().zip(hs).map(|(a, b)| a * b.conj()).sum();
        let grid = product_grid(n);
        let pg = periodogram(gs, grid)?;
        let ph = periodogram(hs, grid)?;
        if pg.mass() == 0.0 || ph.mass() == 0.0 {
            return Err(Error::Trivial(format!("σ̂(0) vanishes at n = {n}")));
        }
        let a = affinity(&pg.to_measure()?, &ph.to_measure()?)?;
        rows.push(BellowLosertRow { n, cross_sum: cross.norm() / n as f64, affinity: a });
    }
    let last = rows.iter().find(|r| r.n == n_top).expect("n_top is in the list");
    let holds = last.cross_sum <= last.affinity + cfg.slack;
    Ok(BellowLosertReport { rows, slack: cfg.slack, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct L1SqrtReport {
    pub n: usize,
    pub grid_size: usize,
    /// (1/2π)∫|(1/√n) Σ g_j e^{ijx}| dx
    pub l1_value: f64,
    /// (1/2π)∫√ρ dx for the supplied reference density.
    pub reference_bound: Option<f64>,
    pub slack: f64,
    pub holds: Option<bool>,
}

/// L¹ norm of the normalized polynomial on a grid of size ≥ 8n, compared
/// against ∫√(reference density) + slack when a reference is supplied.
pub fn l1_sqrt_bound_check(
    g: &[Complex64],
    n: usize,
    reference_ac_density: Option<&[f64]>,
    cfg: CheckConfig,
) -> Result<L1SqrtReport> {
    if n == 0 || g.len() < n {
        return Err(invalid(format!("need 1 ≤ n ≤ {}", g.len())));
    }
    let grid_size = (8 * n).next_power_of_two();
    let values = trig_poly_values(&g[..n], grid_size)?;
    let l1_value = values.iter().map(|z| z.norm()).sum::<f64>() / (grid_size as f64 * (n as f64).sqrt());
    let reference_bound = match reference_ac_density {
        Some([]) => return Err(invalid("reference density is empty")),
        Some(d) if d.iter().any(|x| *x < 0.0) => return Err(invalid("reference density is negative")),
        Some(d) => Some(d.iter().map(|x| x.sqrt()).sum::<f64>() / d.len() as f64),
        None => None,
    };
    let holds = reference_bound.map(|b| l1_value <= b + cfg.slack);
    Ok(L1SqrtReport { n, grid_size, l1_value, reference_bound, slack: cfg.slack, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct SemicontinuityReport {
    pub n_list: Vec<usize>,
    pub finite_affinities: Vec<f64>,
    pub limit_affinity: f64,
    pub slack: f64,
    /// max of the finite-n affinities over the upper half of `n_list` ≤ limit + slack.
    pub holds: bool,
}

/// Compares affinities of periodogram measures of `g` against `fixed` with
/// the affinity of the known limit measure against `fixed`.
pub fn semicontinuity_check(
    g: &[Complex64],
    n_list: &[usize],
    limit: &CircleMeasure,
    fixed: &CircleMeasure,
    cfg: CheckConfig,
) -> Result<SemicontinuityReport> {
    if n_list.is_empty() {
        return Err(invalid("n_list is empty"));
    }
    let mut finite = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n == 0 || n > g.len() {
            return Err(invalid(format!("length {n} outside 1..={}", g.len())));
        }
        let grid = match fixed.grid_size() {
            Some(m) if m >= n => m,
            Some(m) => return Err(invalid(format!("fixed measure grid {m} is coarser than n = {n}"))),
            None => n.next_power_of_two(),
        };
        let p = periodogram(&g[..n], grid)?.to_measure()?;
        finite.push(affinity(&p, fixed)?);
    }
    let limit_affinity = affinity(limit, fixed)?;
    let tail = &finite[finite.len() / 2..];
    let limsup = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(SemicontinuityReport {
        n_list: n_list.to_vec(),
        finite_affinities: finite,
        limit_affinity,
        slack: cfg.slack,
        holds: limsup <= limit_affinity + cfg.slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn rotation(alpha: f64, n: usize) -> Vec<Complex64> {
        (0..n).map(|j| Complex64::from_polar(1.0, TAU * alpha * j as f64)).collect()
    }

    #[test]
    fn identical_sequences() {
        let g = rotation(0.2, 256);
        let r = bellow_losert_check(&g, &g, &[64, 256], CheckConfig::default()).unwrap();
        for row in &r.rows {
            assert!((row.cross_sum - 1.0).abs() < 1e-12);
            assert!((row.affinity - 1.0).abs() < 1e-9);
        }
        assert!(r.holds);
    }

    #[test]
    fn distinct_frequencies_decorrelate() {
        let n = 4096;
        let (a, b) = (0.381_966_011_250_105_1, 0.414_213_562_373_095_1);
        let (g, h) = (rotation(a, n), rotation(b, n));
        let r = bellow_losert_check(&g, &h, &[n], CheckConfig::default()).unwrap();
        // Geometric series: |Σ e^{2πij(a−b)}| ≤ 1/|sin(π(a−b))|.
        let oracle = 1.0 / (std::f64::consts::PI * (a - b)).sin().abs() / n as f64;
        assert!(r.rows[0].cross_sum <= oracle + 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn trivial_sequence_flagged() {
        let z = vec![Complex64::new(0.0, 0.0); 16];
        let g = rotation(0.1, 16);
        assert!(matches!(bellow_losert_check(&z, &g, &[16], CheckConfig::default()), Err(Error::Trivial(_))));
    }

    #[test]
    fn impulse_l1() {
        let mut g = vec![Complex64::new(0.0, 0.0); 100];
        g[0] = Complex64::new(1.0, 0.0);
        let r = l1_sqrt_bound_check(&g, 100, None, CheckConfig::default()).unwrap();
        assert!((r.l1_value - 0.1).abs() < 1e-12);
        assert!(r.holds.is_none());
    }

    #[test]
    fn rotation_l1_is_small() {
        let n = 1 << 16;
        let g = rotation(0.618_033_988_749_894_8, n);
        let zero = vec![0.0; 16];
        let r = l1_sqrt_bound_check(&g, n, Some(&zero), CheckConfig::default()).unwrap();
        assert_eq!(r.reference_bound, Some(0.0));
        assert!(r.holds.unwrap(), "{}", r.l1_value);
    }
}
