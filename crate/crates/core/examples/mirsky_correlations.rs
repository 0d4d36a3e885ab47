//! Empirical correlations of μ² against the Euler-product prediction.

use mobius_lab::arith::sieve;
use mobius_lab::spectral::{mu_squared_correlations, truncation_tail_bound, MirskyProducts};

fn main() -> mobius_lab::Result<()> {
    let (n, k_max) = (1_000_000u64, 16u64);
    let cutoff = 1_000_000;
    let table = sieve(n + k_max)?;
    let corr = mu_squared_correlations(&table, n, k_max)?;
    let products = MirskyProducts::new(cutoff)?;
    println!("prime cutoff {cutoff}, tail ≤ {:.2e}", truncation_tail_bound(cutoff));
    for (k, z) in corr.f_hat.iter().enumerate() {
        let predicted = products.coefficient(k as u64);
        println!("k={k:>2}  empirical {:.6}  predicted {predicted:.6}  gap {:+.1e}", z.re, z.re - predicted);
    }
    Ok(())
}
