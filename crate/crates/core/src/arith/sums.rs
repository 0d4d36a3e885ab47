use crate::error::Result;
use crate::numeric::CompensatedSum;

use super::SieveTable;

/// Mertens function M(x) = Σ_{n≤x} μ(n).
pub fn mertens(table: &SieveTable, x: u64) -> Result<i64> {
    table.check_index(x)?;
    Ok((1..=x).map(|n| i64::from(table.mu_unchecked(n))).sum())
}

/// Σ_{n≤x} μ(n)/n with compensated summation.
pub fn landau_sum(table: &SieveTable, x: u64) -> Result<f64> {
    table.check_index(x)?;
    let mut acc = CompensatedSum::new();
    for n in 1..=x {
        let mu = table.mu_unchecked(n);
        if mu != 0 {
            acc.add(f64::from(mu) / n as f64);
        }
    }
    Ok(acc.value())
}

/// (1/x) Σ_{n≤x} μ²(n).
pub fn squarefree_density(table: &SieveTable, x: u64) -> Result<f64> {
    table.check_index(x)?;
    let count = (1..=x).filter(|&n| table.mu_unchecked(n) != 0).count();
    Ok(count as f64 / x as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;

    #[test]
    fn mertens_small() {
        let t = sieve(1000).unwrap();
        assert_eq!(mertens(&t, 1).unwrap(), 1);
        assert_eq!(mertens(&t, 2).unwrap(), 0);
        assert_eq!(mertens(&t, 10).unwrap(), -1);
        assert!(mertens(&t, 0).is_err());
        assert!(mertens(&t, 1001).is_err());
    }

    #[test]
    fn mertens_increments_are_mu() {
        let t = sieve(5000).unwrap();
        let mut prev = 0;
        for x in 1..=5000 {
            let m = mertens(&t, x).unwrap();
            assert_eq!(m - prev, i64::from(t.mu(x).unwrap()));
            prev = m;
        }
    }

    #[test]
    fn landau_small() {
        let t = sieve(10).unwrap();
        assert_eq!(landau_sum(&t, 1).unwrap(), 1.0);
        assert_eq!(landau_sum(&t, 2).unwrap(), 0.5);
    }

    #[test]
    fn landau_one_million_is_small() {
        let t = sieve(1_000_000).unwrap();
        let s = landau_sum(&t, 1_000_000).unwrap();
        // Direct-summation oracle, ascending order.
        let direct: f64 = (1..=1_000_000u64).map(|n| f64::from(t.mu(n).unwrap()) / n as f64).sum();
        assert!((s - direct).abs() < 1e-9);
        assert!(s.abs() < 0.01, "{s}");
    }

    #[test]
    fn density_small() {
        let t = sieve(10).unwrap();
        assert_eq!(squarefree_density(&t, 1).unwrap(), 1.0);
        assert_eq!(squarefree_density(&t, 4).unwrap(), 0.75);
    }
}
