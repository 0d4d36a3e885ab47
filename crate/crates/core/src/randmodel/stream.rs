use num_complex::Complex64;
use serde::Serialize;

use crate::arith::SieveTable;
use crate::error::{invalid, Error, Result};
use crate::rng::{CounterSigns, STREAM_MU_RAND};

/// μ_rand(n) = ε_n·μ²(n), with ε_n a fair sign addressed by (seed, n).
#[derive(Clone, Copy, Debug)]
pub struct RandomMoebiusStream<'a> {
    seed: u64,
    table: &'a SieveTable,
    signs: CounterSigns,
}

impl<'a> RandomMoebiusStream<'a> {
    pub fn new(seed: u64, table: &'a SieveTable) -> Self {
        Self { seed, table, signs: CounterSigns::new(seed, STREAM_MU_RAND) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn table(&self) -> &'a SieveTable {
        self.table
    }

    pub fn value(&self, n: u64) -> Result<i8> {
        Ok(self.table.mu_squared(n)? as i8 * self.signs.sign(n))
    }

    /// μ_rand(lo..=hi).
    pub fn sample(&self, lo: u64, hi: u64) -> Result<Vec<i8>> {
        self.table.check_index(lo)?;
        self.table.check_index(hi)?;
        if hi < lo {
            return Err(invalid(format!("empty range {lo}..={hi}")));
        }
        let mut out = vec![0i8; (hi - lo + 1) as usize];
        self.signs.fill(lo, &mut out);
        for (v, n) in out.iter_mut().zip(lo..) {
            if self.table.mu_unchecked(n) == 0 {
                *v = 0;
            }
        }
        Ok(out)
    }
}

pub fn sample(seed: u64, table: &SieveTable, lo: u64, hi: u64) -> Result<Vec<i8>> {
    RandomMoebiusStream::new(seed, table).sample(lo, hi)
}

/// (1/N) Σ x_i·x_{i+1} over the first N − 1 pairs.
pub fn serial_correlation(values: &[i8]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let s: i64 = values.windows(2).map(|w| i64::from(w[0] * w[1])).sum();
    s as f64 / n as f64
}

/// Y_n^m = (1/m) Σ_{j<m} g_j·μ_rand(n+j).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlockAverage {
    pub n: u64,
    pub m: usize,
    pub value: Complex64,
}

pub fn block_average(g: &[Complex64], stream: &RandomMoebiusStream<'_>, n: u64, m: usize) -> Result<BlockAverage> {
    if m == 0 {
        return Err(invalid("block length must be positive"));
    }
    if g.len() < m {
        return Err(invalid(format!("sequence of length {} is shorter than m = {m}", g.len())));
    }
    let last = n + m as u64 - 1;
    if n == 0 || last > stream.table().n_max() {
        return Err(Error::OutOfRange { index: last.max(n), lo: 1, hi: stream.table().n_max() });
    }
    let w = stream.sample(n, last)?;
    let s: Complex64 = g[..m].iter().zip(&w).map(|(a, &b)| a * f64::from(b)).sum();
    Ok(BlockAverage { n, m, value: s / m as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;

    #[test]
    fn zero_off_squarefree_support() {
        let t = sieve(10_000).unwrap();
        for seed in 0..5 {
            let s = RandomMoebiusStream::new(seed, &t);
            assert_eq!(s.value(4).unwrap(), 0);
            assert!(matches!(s.value(2).unwrap(), 1 | -1));
            let v = s.sample(1, 10_000).unwrap();
            for (i, &x) in v.iter().enumerate() {
                assert_eq!(x == 0, t.mu(i as u64 + 1).unwrap() == 0);
            }
        }
    }

    #[test]
    fn sample_is_pointwise() {
        let t = sieve(1000).unwrap();
        let s = RandomMoebiusStream::new(11, &t);
        let v = s.sample(300, 400).unwrap();
        for (i, &x) in v.iter().enumerate() {
            assert_eq!(x, s.value(300 + i as u64).unwrap());
        }
        assert!(s.sample(0, 5).is_err());
        assert!(s.sample(5, 1001).is_err());
    }

    #[test]
    fn block_average_cases() {
        let t = sieve(100).unwrap();
        let s = RandomMoebiusStream::new(3, &t);
        let ones = vec![Complex64::new(1.0, 0.0); 8];
        // 8 and 9 are both non-squarefree.
        assert_eq!(block_average(&ones, &s, 8, 2).unwrap().value, Complex64::new(0.0, 0.0));
        let g = vec![Complex64::new(0.5, -0.5)];
        let y = block_average(&g, &s, 7, 1).unwrap();
        assert_eq!(y.value, g[0] * f64::from(s.value(7).unwrap()));
        assert!(block_average(&ones, &s, 95, 8).is_err());
    }
}
