//! Hoeffding–Azuma tail bounds for weighted Rademacher sums, checked by simulation.

use mobius_lab::randmodel::{borel_cantelli_partial_sum, hoeffding_azuma_check};

fn main() -> mobius_lab::Result<()> {
    let c: Vec<f64> = (1..=400).map(|i| 1.0 / (i as f64).sqrt()).collect();
    let scale = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    let t_list: Vec<f64> = [1.0, 2.0, 3.0].iter().map(|u| u * scale).collect();
    let report = hoeffding_azuma_check(&c, &t_list, 100_000, 42)?;
    for row in &report.rows {
        println!(
            "t={:>7.3}  P(|S|≥t) ≈ {:.5}  bound {:.5}  slack {:.5}  {}",
            row.t,
            row.empirical,
            row.bound,
            row.mc_slack,
            if row.pass { "ok" } else { "VIOLATED" }
        );
    }
    let (sum, tail) = borel_cantelli_partial_sum(1_000);
    println!("Σ_(q≤1000) 1/q² = {sum:.6}, tail ≤ {tail:.1e}");
    Ok(())
}
