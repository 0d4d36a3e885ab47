//! sup_θ |Σ_{n≤x} μ(n)e(nθ)|/x on a fine grid, and L¹/L² flatness of μ's polynomial.

use mobius_lab::arith::sieve;
use mobius_lab::spectral::{davenport_sup, elliott_correlations, flatness};

fn main() -> mobius_lab::Result<()> {
    let table = sieve(1_000_100)?;
    for x in [1_000u64, 10_000, 100_000, 1_000_000] {
        let grid = (4 * x as usize).next_power_of_two();
        println!("x={x:>8}  sup/x = {:.5}", davenport_sup(&table, x, grid)?);
    }
    for n in [1_000u64, 10_000, 100_000] {
        let f = flatness(&table, n, (8 * n as usize).next_power_of_two())?;
        println!("n={n:>6}  ‖P‖₁/‖P‖₂ = {:.4}", f.l1_over_l2);
    }
    let e = elliott_correlations(&table, 1_000_000, 4)?;
    for (h, z) in e.f_hat.iter().enumerate().skip(1) {
        println!("(1/N)Σ μ(n)μ(n+{h}) = {:+.5}", z.re);
    }
    Ok(())
}
