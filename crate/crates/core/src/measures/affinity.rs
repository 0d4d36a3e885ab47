use crate::error::{invalid, Error, Result};
use crate::numeric::CompensatedSum;

use super::CircleMeasure;

/// Affinity G(p, q) of the normalized measures: the sum of √(w_p·w_q) over
/// shared atom positions plus (1/2π)∫√(ρ_p·ρ_q) dx over the densities.
/// Atom-versus-density cross terms are zero.
pub fn affinity(p: &CircleMeasure, q: &CircleMeasure) -> Result<f64> {
    let (mp, mq) = (p.total_mass(), q.total_mass());
    if !(mp > 0.0) || !(mq > 0.0) {
        return Err(Error::Trivial("affinity needs measures of positive mass".into()));
    }
    let scale = 1.0 / (mp * mq).sqrt();
    let mut acc = CompensatedSum::new();

    // Both atom lists are sorted by position.
    let (a, b) = (p.atoms(), q.atoms());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].position.cmp(&b[j].position) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc.add((a[i].weight * b[j].weight).sqrt());
                i += 1;
                j += 1;
            }
        }
    }

    if let (Some(x), Some(y)) = (p.ac_density(), q.ac_density()) {
        if x.len() != y.len() {
            return Err(invalid(format!("density grids differ in size: {} vs {}", x.len(), y.len())));
        }
        let mut grid = CompensatedSum::new();
        for (u, v) in x.iter().zip(y) {
            grid.add((u * v).sqrt());
        }
        acc.add(grid.value() / x.len() as f64);
    }
    Ok(acc.value() * scale)
}

/// H = √(2(1 − G)).
pub fn hellinger(p: &CircleMeasure, q: &CircleMeasure) -> Result<f64> {
    let g = affinity(p, q)?;
    Ok((2.0 * (1.0 - g)).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Position;

    fn mixed(grid: usize) -> CircleMeasure {
        CircleMeasure::new(vec![(Position::new(0, 1).unwrap(), 0.5)], Some(vec![0.5; grid])).unwrap()
    }

    #[test]
    fn identical_measures() {
        let m = mixed(1 << 10);
        assert!((affinity(&m, &m).unwrap() - 1.0).abs() < 1e-12);
        assert!(hellinger(&m, &m).unwrap() < 1e-6);
    }

    #[test]
    fn disjoint_atoms() {
        let a = CircleMeasure::dirac(0, 1).unwrap();
        let b = CircleMeasure::dirac(1, 2).unwrap();
        assert_eq!(affinity(&a, &b).unwrap(), 0.0);
        assert!((hellinger(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lebesgue_against_half_atom() {
        let leb = CircleMeasure::lebesgue(1 << 14).unwrap();
        let g = affinity(&leb, &mixed(1 << 14)).unwrap();
        assert!((g - 0.5f64.sqrt()).abs() < 1e-12);
        let h = hellinger(&leb, &mixed(1 << 14)).unwrap();
        assert!((h - (2.0 - 2f64.sqrt()).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn scale_invariant_and_errors() {
        let a = CircleMeasure::new(vec![(Position::new(1, 3).unwrap(), 5.0)], Some(vec![3.0; 8])).unwrap();
        let b = CircleMeasure::new(vec![(Position::new(1, 3).unwrap(), 0.1)], Some(vec![0.01; 8])).unwrap();
        let g = affinity(&a, &b).unwrap();
        let gn = affinity(&a.normalized().unwrap(), &b.normalized().unwrap()).unwrap();
        assert!((g - gn).abs() < 1e-12);
        let zero = CircleMeasure::new(vec![], Some(vec![0.0; 8])).unwrap();
        assert!(affinity(&a, &zero).is_err());
        let other_grid = CircleMeasure::lebesgue(16).unwrap();
        assert!(affinity(&a, &other_grid).is_err());
    }
}
