//! Sieve μ and ω up to ten million and print Mertens and Landau sums by decade.
//!
//! cargo run --release --example sieve_mertens [N]

use mobius_lab::arith::{landau_sum, mertens, sieve, squarefree_density};

fn main() -> mobius_lab::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000_000);
    let table = sieve(n)?;
    println!("{:>10} {:>8} {:>14} {:>10}", "x", "M(x)", "Σμ(k)/k", "Q(x)/x");
    let mut x = 10;
    while x <= n {
        println!(
            "{x:>10} {:>8} {:>14.3e} {:>10.7}",
            mertens(&table, x)?,
            landau_sum(&table, x)?,
            squarefree_density(&table, x)?
        );
        x *= 10;
    }
    println!("6/π² = {:.7}", 6.0 / std::f64::consts::PI.powi(2));
    Ok(())
}
