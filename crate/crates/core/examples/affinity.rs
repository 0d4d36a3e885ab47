//! Affinity ∫√(dP·dQ) between measures on the circle with atoms and densities.

use mobius_lab::measures::{affinity, hellinger, CircleMeasure, Position};

fn main() -> mobius_lab::Result<()> {
    let p = CircleMeasure::new(vec![(Position::new(0, 1)?, 0.5), (Position::new(1, 3)?, 0.5)], None)?;
    let q = CircleMeasure::new(vec![(Position::new(0, 1)?, 0.2), (Position::new(2, 3)?, 0.8)], None)?;
    println!("A(P, Q) = {:.6} (expected √0.1 = {:.6})", affinity(&p, &q)?, 0.1f64.sqrt());
    println!("A(P, P) = {:.6}", affinity(&p, &p)?);

    let lebesgue = CircleMeasure::lebesgue(1024)?;
    println!("A(Dirac, Lebesgue) = {}", affinity(&CircleMeasure::dirac(1, 4)?, &lebesgue)?);

    let ramp: Vec<f64> = (0..1024).map(|i| 2.0 * (i as f64 + 0.5) / 1024.0).collect();
    let tilted = CircleMeasure::new(vec![], Some(ramp))?;
    println!("A(ramp, Lebesgue) = {:.6} (exact 2√2/3 = {:.6})", affinity(&tilted, &lebesgue)?, 2.0 * 2f64.sqrt() / 3.0);
    println!("Hellinger(P, Q) = {:.6}", hellinger(&p, &q)?);

    let rotated = affinity(&p.rotated(1, 7)?, &q.rotated(1, 7)?)?;
    println!("after rotating both by 1/7: {rotated:.6}");
    println!("{}", serde_json::to_string(&p)?);
    Ok(())
}
