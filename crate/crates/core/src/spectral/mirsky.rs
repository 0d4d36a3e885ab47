use crate::arith::primes_up_to;
use crate::error::{invalid, Result};

pub const DEFAULT_PRIME_CUTOFF: u64 = 1_000_000;

/// Bound 2/(P log P) on the relative error from truncating the Euler products at P.
pub fn truncation_tail_bound(prime_cutoff: u64) -> f64 {
    let p = prime_cutoff as f64;
    2.0 / (p * p.ln())
}

/// Euler products over p ≤ P, reused across many lags.
#[derive(Clone, Debug)]
pub struct MirskyProducts {
    prime_cutoff: u64,
    primes: Vec<u64>,
}

impl MirskyProducts {
    pub fn new(prime_cutoff: u64) -> Result<Self> {
        if prime_cutoff < 2 {
            return Err(invalid("prime cutoff must be at least 2"));
        }
        Ok(Self { prime_cutoff, primes: primes_up_to(prime_cutoff) })
    }

    pub fn prime_cutoff(&self) -> u64 {
        self.prime_cutoff
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// ∏_{p≤P} (1 − 2/p²).
    pub fn base(&self) -> f64 {
        self.primes.iter().map(|&p| 1.0 - 2.0 / (p * p) as f64).product()
    }

    /// ∏_{p≤P}(1 − 2/p²) · ∏_{p≤P, p²|k}(1 + 1/(p²−2)).
    ///
    /// When p² | k the two factors collapse to 1 − 1/p², which is what gets
    /// multiplied in; k = 0 is divisible by every p².
    pub fn coefficient(&self, k: u64) -> f64 {
        self.primes
            .iter()
            .map(|&p| {
                let q = p * p;
                if k.is_multiple_of(q) {
                    1.0 - 1.0 / q as f64
                } else {
                    1.0 - 2.0 / q as f64
                }
            })
            .product()
    }
}

pub fn mirsky_coefficient(k: u64, prime_cutoff: u64) -> Result<f64> {
    Ok(MirskyProducts::new(prime_cutoff)?.coefficient(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_is_euler_product_of_zeta_two() {
        for cutoff in [1_000, 1_000_000] {
            let got = mirsky_coefficient(0, cutoff).unwrap();
            let mut oracle = 1.0;
            for p in primes_up_to(cutoff) {
                oracle *= 1.0 - 1.0 / (p as f64 * p as f64);
            }
            assert!((got - oracle).abs() <= 1e-14, "{got} vs {oracle}");
        }
        let inv_zeta2 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!((mirsky_coefficient(0, 1_000_000).unwrap() - inv_zeta2).abs() < 1e-6);
    }

    #[test]
    fn squarefree_lag() {
        let m = MirskyProducts::new(1_000_000).unwrap();
        let one = m.coefficient(1);
        assert_eq!(one, m.base());
        assert!((one - 0.3226).abs() < 5e-5, "{one}");
        assert_eq!(m.coefficient(6), one);
    }

    #[test]
    fn lag_four_gets_one_correction() {
        let m = MirskyProducts::new(10_000).unwrap();
        assert!((m.coefficient(4) - 1.5 * m.coefficient(1)).abs() < 1e-15);
        // 36 = 2²·3²: corrections 3/2 and 1 + 1/7.
        assert!((m.coefficient(36) - 1.5 * (8.0 / 7.0) * m.coefficient(1)).abs() < 1e-15);
    }

    #[test]
    fn literal_formula_agrees() {
        let m = MirskyProducts::new(1_000).unwrap();
        for k in [0u64, 1, 4, 8, 9, 12, 100, 900] {
            let mut lit = m.base();
            for &p in m.primes() {
                if k % (p * p) == 0 {
                    lit *= 1.0 + 1.0 / ((p * p - 2) as f64);
                }
            }
            assert!((lit - m.coefficient(k)).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn bad_cutoff() {
        assert!(mirsky_coefficient(3, 1).is_err());
    }
}
