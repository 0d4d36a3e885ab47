//! Random Möbius signs: orthogonality sums against deterministic sequences decay like N^{-1/2}.

use mobius_lab::arith::sieve;
use mobius_lab::dynsys::SequenceGenerator;
use mobius_lab::randmodel::{orthogonality_decay, sample, serial_correlation};

fn main() -> mobius_lab::Result<()> {
    let table = sieve(1 << 20)?;
    let signs = sample(0, &table, 1, 1 << 20)?;
    println!("serial correlation of one sample path: {:+.5}", serial_correlation(&signs));

    let grid: Vec<u64> = (10..=20).map(|e| 1u64 << e).collect();
    let seeds: Vec<u64> = (0..20).collect();
    for system in [SequenceGenerator::ThueMorse, SequenceGenerator::rotation(0.5f64.sqrt())?] {
        let report = orthogonality_decay(&system, &table, &seeds, &grid)?;
        println!(
            "{:<28} mean slope of log|S_N| vs log N: {:+.3} ({} zero points skipped)",
            report.system,
            report.mean_slope.unwrap_or(f64::NAN),
            report.excluded_points
        );
    }
    Ok(())
}
