//! Cross sums against periodogram affinities, and the L¹ normalisation bound.

use mobius_lab::arith::sieve;
use mobius_lab::dynsys::SequenceGenerator;
use mobius_lab::measures::{bellow_losert_check, l1_sqrt_bound_check, CheckConfig};
use mobius_lab::spectral::to_complex;

fn main() -> mobius_lab::Result<()> {
    let n_list = [1_000, 10_000, 100_000];
    let n = *n_list.last().unwrap();
    let table = sieve(n as u64)?;
    let mu = to_complex(&table.mu_f64(n as u64)?);
    let rotation = SequenceGenerator::rotation(0.5f64.sqrt())?.values(1, n);
    let thue_morse = SequenceGenerator::ThueMorse.values(1, n);
    let cfg = CheckConfig::default();

    for (name, h) in [("rotation", &rotation), ("thue_morse", &thue_morse)] {
        let report = bellow_losert_check(&mu, h, &n_list, cfg)?;
        for row in &report.rows {
            println!("μ vs {name:<10} n={:>6}  |cross| {:.4}  affinity {:.4}", row.n, row.cross_sum, row.affinity);
        }
        println!("  holds: {}", report.holds);
    }

    let l1 = l1_sqrt_bound_check(&mu, 10_000, None, cfg)?;
    println!("{l1:#?}");
    Ok(())
}
