//! Block-complexity entropy estimates across the sequence zoo.

use mobius_lab::dynsys::{entropy_estimate, SequenceGenerator, DEFAULT_BINS};

fn main() -> mobius_lab::Result<()> {
    let zoo = [
        SequenceGenerator::rotation(0.5f64.sqrt())?,
        SequenceGenerator::quadratic_weyl(0.5f64.sqrt())?,
        SequenceGenerator::ThueMorse,
        SequenceGenerator::q_multiplicative(3, &[0.0, 1.0 / 3.0, 0.5])?,
        SequenceGenerator::from_name("random_shift", 1)?,
    ];
    let m_list = [1, 2, 4, 8, 16, 32, 64];
    for system in &zoo {
        let t = entropy_estimate(system, 1 << 20, &m_list, DEFAULT_BINS)?;
        let rates: Vec<String> = t.log_r_over_m.iter().map(|v| format!("{v:.3}")).collect();
        println!("{:<40} zero entropy: {:<5} log r(m)/m: {}", system.to_string(), system.has_zero_entropy(), rates.join(" "));
    }
    Ok(())
}
