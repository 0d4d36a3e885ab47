use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::rng::{CounterSigns, STREAM_TRIALS};

/// 2·exp(−t² / (2 Σ c_j²)).
pub fn hoeffding_bound(c: &[f64], t: f64) -> f64 {
    let v: f64 = c.iter().map(|x| x * x).sum();
    2.0 * (-t * t / (2.0 * v)).exp()
}

#[derive(Clone, Debug, Serialize)]
pub struct HoeffdingRow {
    pub t: f64,
    pub empirical: f64,
    pub bound: f64,
    /// 3·√(b(1−b)/trials) with b clipped to [0, 1].
    pub mc_slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HoeffdingReport {
    pub m: usize,
    pub trials: u64,
    pub seed: u64,
    pub rows: Vec<HoeffdingRow>,
    pub passes: bool,
}

pub(crate) fn mc_slack(bound: f64, trials: u64) -> f64 {
    let b = bound.clamp(0.0, 1.0);
    3.0 * (b * (1.0 - b) / trials as f64).sqrt()
}

/// Empirical tail frequencies of |Σ c_j ε_j| > t against the Hoeffding–Azuma bound.
/// Trial i draws its signs from counter stream (seed, i).
pub fn hoeffding_azuma_check(c: &[f64], t_list: &[f64], trials: u64, seed: u64) -> Result<HoeffdingReport> {
    if c.is_empty() || c.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(invalid("bounds c_j must be positive and finite"));
    }
    if trials < 10_000 {
        return Err(invalid(format!("need at least 10⁴ trials, got {trials}")));
    }
    if t_list.iter().any(|&t| !(t >= 0.0)) {
        return Err(invalid("thresholds must be nonnegative"));
    }
    let m = c.len();
    let uniform = c.iter().all(|&x| x == c[0]);
    let sums: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let signs = CounterSigns::new(seed, STREAM_TRIALS + i);
            if uniform {
                c[0] * signs.rademacher_sum(m as u64) as f64
            } else {
                let mut eps = vec![0i8; m];
                signs.fill(0, &mut eps);
                c.iter().zip(&eps).map(|(x, &e)| x * f64::from(e)).sum()
            }
        })
        .collect();
    let rows: Vec<HoeffdingRow> = t_list
        .iter()
        .map(|&t| {
            let exceed = sums.iter().filter(|s| s.abs() > t).count();
            let empirical = exceed as f64 / trials as f64;
            let bound = hoeffding_bound(c, t);
            let mc_slack = mc_slack(bound, trials);
            HoeffdingRow { t, empirical, bound, mc_slack, pass: empirical <= bound + mc_slack }
        })
        .collect();
    let passes = rows.iter().all(|r| r.pass);
    Ok(HoeffdingReport { m, trials, seed, rows, passes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_never_exceeds_two() {
        let r = hoeffding_azuma_check(&[1.0], &[2.0, 0.0], 10_000, 1).unwrap();
        assert_eq!(r.rows[0].empirical, 0.0);
        assert!((r.rows[0].bound - 2.0 * (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(r.rows[1].bound, 2.0);
        assert!(r.passes);
    }

    #[test]
    fn nonuniform_bounds() {
        let c: Vec<f64> = (1..=50).map(|j| 1.0 / j as f64).collect();
        let r = hoeffding_azuma_check(&c, &[0.5, 1.0, 2.0, 3.0], 20_000, 9).unwrap();
        assert!(r.passes, "{:?}", r.rows);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hoeffding_azuma_check(&[1.0, 0.0], &[1.0], 10_000, 0).is_err());
        assert!(hoeffding_azuma_check(&[1.0], &[1.0], 100, 0).is_err());
        assert!(hoeffding_azuma_check(&[], &[1.0], 10_000, 0).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let a = hoeffding_azuma_check(&[1.0; 100], &[10.0, 20.0], 10_000, 4).unwrap();
        let b = hoeffding_azuma_check(&[1.0; 100], &[10.0, 20.0], 10_000, 4).unwrap();
        assert_eq!(a.rows[0].empirical, b.rows[0].empirical);
        assert_eq!(a.rows[1].empirical, b.rows[1].empirical);
    }
}
