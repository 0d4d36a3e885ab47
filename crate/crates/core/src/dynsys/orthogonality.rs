use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::SieveTable;
use crate::error::{invalid, Result};
use crate::randmodel::RandomMoebiusStream;

/// Arithmetic weights w_n, n = 1, 2, ….
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    Mu,
    MuSquared,
    /// μ² minus its empirical mean over 1..=N.
    CenteredMuSquared,
    MuRand { seed: u64 },
}

impl Weight {
    /// w_1, …, w_N.
    pub fn values(&self, table: &SieveTable, n: u64) -> Result<Vec<f64>> {
        match self {
            Weight::Mu => table.mu_f64(n),
            Weight::MuSquared => table.mu_squared_f64(n),
            Weight::CenteredMuSquared => {
                let mut v = table.mu_squared_f64(n)?;
                let mean = v.iter().sum::<f64>() / n as f64;
                v.iter_mut().for_each(|x| *x -= mean);
                Ok(v)
            }
            Weight::MuRand { seed } => Ok(RandomMoebiusStream::new(*seed, table)
                .sample(1, n)?
                .into_iter()
                .map(f64::from)
                .collect()),
        }
    }
}

/// S_N = |(1/N) Σ_{i<N} g_i·w_i|.
pub fn orthogonality_sum(g: &[Complex64], w: &[f64], n: usize) -> Result<f64> {
    if n == 0 {
        return Err(invalid("N must be at least 1"));
    }
    if g.len() < n || w.len() < n {
        return Err(invalid(format!("sequences of length {} and {} are shorter than N = {n}", g.len(), w.len())));
    }
    let s: Complex64 = g[..n].iter().zip(&w[..n]).map(|(a, &b)| a * b).sum();
    Ok(s.norm() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;
    use crate::dynsys::SequenceGenerator;

    #[test]
    fn zero_weight() {
        let g = SequenceGenerator::ThueMorse.generate(100).unwrap();
        assert_eq!(orthogonality_sum(&g, &[0.0; 100], 100).unwrap(), 0.0);
        assert!(orthogonality_sum(&g, &[0.0; 50], 100).is_err());
    }

    #[test]
    fn bounded_by_mean_abs_weight() {
        let t = sieve(20_001).unwrap();
        let g = SequenceGenerator::Rotation { alpha: crate::dynsys::Phase::GOLDEN }.values(1, 20_000);
        for w in [Weight::Mu, Weight::MuSquared, Weight::CenteredMuSquared, Weight::MuRand { seed: 3 }] {
            let v = w.values(&t, 20_000).unwrap();
            let s = orthogonality_sum(&g, &v, 20_000).unwrap();
            let bound = v.iter().map(|x| x.abs()).sum::<f64>() / 20_000.0;
            assert!(s <= bound + 1e-12);
        }
    }

    #[test]
    fn centered_has_zero_mean() {
        let t = sieve(1000).unwrap();
        let v = Weight::CenteredMuSquared.values(&t, 1000).unwrap();
        assert!(v.iter().sum::<f64>().abs() < 1e-9);
    }
}
