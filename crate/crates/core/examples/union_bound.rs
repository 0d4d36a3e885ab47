//! Sup over all m-windows of a zero-entropy orbit against a random Möbius block,
//! compared with the union bound over the r(m) distinct windows.

use mobius_lab::arith::sieve;
use mobius_lab::dynsys::SequenceGenerator;
use mobius_lab::randmodel::{union_bound_experiment, UnionBoundConfig};

fn main() -> mobius_lab::Result<()> {
    let table = sieve(20_000)?;
    for (m, delta) in [(1_000, 0.05), (10_000, 0.1)] {
        let cfg = UnionBoundConfig::new(m, delta, 200);
        for system in [SequenceGenerator::ThueMorse, SequenceGenerator::rotation(0.5f64.sqrt())?] {
            let r = union_bound_experiment(&system, &table, &cfg)?;
            println!(
                "{:<28} m={m:>6} δ={delta}  r(m)={:>6}  largest sup {:.4}  exceed {}/{}  bound {:.2e}",
                r.system, r.r_m, r.max_sup, r.exceedances, r.trials, r.bound
            );
        }
    }
    Ok(())
}
