use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{sieve_with, SieveOptions};
use crate::error::{invalid, Result};
use crate::measures::{CircleMeasure, Position};

use super::mirsky::{truncation_tail_bound, MirskyProducts};

/// `count` equal atoms of mass `weight` at j/count, 0 ≤ j < count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AtomRing {
    /// The squarefree d generating this ring; count = d².
    pub d: u64,
    pub count: u64,
    pub weight: f64,
}

/// Truncation of the atomic spectral measure of μ² to squarefree d ≤ d_max,
/// kept as rings of atoms so that large d_max stays cheap. [`Self::to_measure`]
/// materializes the merged exact-rational atom list.
#[derive(Clone, Debug, Serialize)]
pub struct MuSquaredSpectrum {
    pub d_max: u64,
    pub prime_cutoff: u64,
    /// ∏_{p≤P}(1 − 2/p²), the mass of the atom at 0 contributed by d = 1.
    pub base: f64,
    pub rings: Vec<AtomRing>,
    pub truncation_tail_bound: f64,
}

impl MuSquaredSpectrum {
    pub fn total_mass(&self) -> f64 {
        self.rings.iter().map(|r| r.count as f64 * r.weight).sum()
    }

    /// Σ over atoms of w·e^{−2πik·pos}; each ring sums to count·weight when
    /// count | k and to zero otherwise.
    pub fn fourier_coefficient(&self, k: u64) -> f64 {
        self.rings
            .iter()
            .filter(|r| k.is_multiple_of(r.count))
            .map(|r| r.count as f64 * r.weight)
            .sum()
    }

    pub fn atom_count(&self) -> u64 {
        self.rings.iter().map(|r| r.count).sum()
    }

    /// Every atom j/d², reduced, with coinciding positions merged.
    pub fn to_measure(&self, max_atoms: u64) -> Result<CircleMeasure> {
        let total = self.atom_count();
        if total > max_atoms {
            return Err(invalid(format!("{total} raw atoms exceed the limit {max_atoms}")));
        }
        let mut atoms = Vec::with_capacity(total as usize);
        for r in &self.rings {
            for j in 0..r.count {
                atoms.push((Position::new(j, r.count)?, r.weight));
            }
        }
        CircleMeasure::new(atoms, None)
    }

    /// Direct sum Σ w·e^{−2πik·pos} over materialized atoms.
    pub fn fourier_coefficient_direct(measure: &CircleMeasure, k: i64) -> Complex64 {
        measure.fourier_coefficient(k)
    }
}

pub fn mu_squared_spectrum(d_max: u64, prime_cutoff: u64) -> Result<MuSquaredSpectrum> {
    if d_max == 0 {
        return Err(invalid("d_max must be at least 1"));
    }
    let products = MirskyProducts::new(prime_cutoff)?;
    let base = products.base();
    let table = sieve_with(d_max, &SieveOptions { with_omega: false, ..Default::default() })?;
    let small_primes: Vec<u64> = products.primes().iter().copied().take_while(|&p| p <= d_max).collect();

    let mut rings = Vec::new();
    for d in 1..=d_max {
        if table.mu(d)? == 0 {
            continue;
        }
        // Squarefree d with a prime factor above P contributes nothing to the
        // truncated product; such d only appear when d_max > P.
        let mut rest = d;
        let mut factor = 1.0;
        for &p in &small_primes {
            if rest % p == 0 {
                factor /= (p * p - 2) as f64;
                rest /= p;
                if rest == 1 {
                    break;
                }
            }
        }
        if rest != 1 {
            continue;
        }
        let count = d * d;
        rings.push(AtomRing { d, count, weight: base * factor / count as f64 });
    }
    Ok(MuSquaredSpectrum {
        d_max,
        prime_cutoff,
        base,
        rings,
        truncation_tail_bound: truncation_tail_bound(prime_cutoff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_max_one_is_delta_at_zero() {
        let s = mu_squared_spectrum(1, 1000).unwrap();
        let m = s.to_measure(10).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_eq!(m.atoms()[0].position, Position::new(0, 1).unwrap());
        assert_eq!(m.atoms()[0].weight, s.base);
    }

    #[test]
    fn mass_monotone_and_bounded() {
        let cap = MirskyProducts::new(10_000).unwrap().coefficient(0);
        let mut prev = 0.0;
        for d_max in [1, 2, 3, 10, 50, 200] {
            let mass = mu_squared_spectrum(d_max, 10_000).unwrap().total_mass();
            assert!(mass >= prev && mass <= cap + 1e-15);
            prev = mass;
        }
    }

    #[test]
    fn merged_atoms_reproduce_ring_coefficients() {
        let s = mu_squared_spectrum(30, 10_000).unwrap();
        let m = s.to_measure(1_000_000).unwrap();
        // 1/4 from d = 2 and 9/36 from d = 6 coincide.
        assert!(m.atoms().len() < s.atom_count() as usize);
        assert!((m.total_mass() - s.total_mass()).abs() < 1e-12);
        for k in 0..=40u64 {
            let direct = m.fourier_coefficient(k as i64);
            assert!((direct.re - s.fourier_coefficient(k)).abs() < 1e-12, "k={k}");
            assert!(direct.im.abs() < 1e-12);
        }
    }

    #[test]
    fn atom_limit_enforced() {
        assert!(mu_squared_spectrum(100, 1000).unwrap().to_measure(100).is_err());
    }
}
