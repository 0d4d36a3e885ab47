use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeric::{compensated_sum, gcd};

/// A reduced fraction num/den in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    num: u64,
    den: u64,
}

impl Position {
    /// Reduces num/den modulo 1.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(invalid("atom denominator must be positive"));
        }
        let num = num % den;
        let g = gcd(num, den);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Position shifted by a/b, reduced exactly.
    pub fn shifted(&self, a: u64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(invalid("rotation denominator must be positive"));
        }
        let den = u128::from(self.den) * u128::from(b);
        let num = u128::from(self.num) * u128::from(b) + u128::from(a % b) * u128::from(self.den);
        let num = num % den;
        let g = gcd128(num, den);
        let (num, den) = (num / g, den / g);
        let den = u64::try_from(den).map_err(|_| invalid("rotated position denominator overflows u64"))?;
        Ok(Self { num: num as u64, den })
    }
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den)).cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub position: Position,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleMeasure {
    atoms: Vec<Atom>,
    ac: Option<Vec<f64>>,
    total_mass: f64,
}

impl CircleMeasure {
    /// Builds a measure, merging atoms at equal positions and dropping
    /// zero-weight atoms. Negative or non-finite weights and densities are rejected.
    pub fn new(atoms: Vec<(Position, f64)>, ac: Option<Vec<f64>>) -> Result<Self> {
        if atoms.iter().any(|(_, w)| !w.is_finite() || *w < 0.0) {
            return Err(invalid("atom weights must be finite and nonnegative"));
        }
        if let Some(values) = &ac {
            if values.is_empty() {
                return Err(invalid("density grid must be nonempty"));
            }
            if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(invalid("density values must be finite and nonnegative"));
            }
        }
        let mut atoms = atoms;
        atoms.sort_by_key(|a| a.0);
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for (position, weight) in atoms {
            match merged.last_mut() {
                Some(last) if last.position == position => last.weight += weight,
                _ => merged.push(Atom { position, weight }),
            }
        }
        merged.retain(|a| a.weight > 0.0);
        let atom_mass = compensated_sum(merged.iter().map(|a| a.weight));
        let ac_mass = ac.as_ref().map_or(0.0, |v| compensated_sum(v.iter().copied()) / v.len() as f64);
        Ok(Self { atoms: merged, ac, total_mass: atom_mass + ac_mass })
    }

    pub fn lebesgue(grid_size: usize) -> Result<Self> {
        Self::new(Vec::new(), Some(vec![1.0; grid_size]))
    }

    pub fn dirac(num: u64, den: u64) -> Result<Self> {
        Self::new(vec![(Position::new(num, den)?, 1.0)], None)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn ac_density(&self) -> Option<&[f64]> {
        self.ac.as_deref()
    }

    pub fn grid_size(&self) -> Option<usize> {
        self.ac.as_ref().map(Vec::len)
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn atomic_mass(&self) -> f64 {
        compensated_sum(self.atoms.iter().map(|a| a.weight))
    }

    pub fn ac_mass(&self) -> f64 {
        self.ac.as_ref().map_or(0.0, |v| compensated_sum(v.iter().copied()) / v.len() as f64)
    }

    pub fn weight_at(&self, position: Position) -> f64 {
        self.atoms
            .binary_search_by(|a| a.position.cmp(&position))
            .map_or(0.0, |i| self.atoms[i].weight)
    }

    /// Scaled copy with unit total mass.
    pub fn normalized(&self) -> Result<Self> {
        if !(self.total_mass > 0.0) {
            return Err(crate::Error::Trivial("measure has zero mass".into()));
        }
        let s = 1.0 / self.total_mass;
        let atoms = self.atoms.iter().map(|a| (a.position, a.weight * s)).collect();
        let ac = self.ac.as_ref().map(|v| v.iter().map(|x| x * s).collect());
        Self::new(atoms, ac)
    }

    /// Rotation by a/b. Grid densities move by whole grid steps only, so
    /// grid_size·a/b must be an integer when a density is present.
    pub fn rotated(&self, a: u64, b: u64) -> Result<Self> {
        let atoms = self
            .atoms
            .iter()
            .map(|at| Ok((at.position.shifted(a, b)?, at.weight)))
            .collect::<Result<Vec<_>>>()?;
        let ac = match &self.ac {
            None => None,
            Some(v) => {
                let m = v.len() as u128;
                let steps = m * u128::from(a % b);
                if !steps.is_multiple_of(u128::from(b)) {
                    return Err(invalid(format!("rotation {a}/{b} is not a multiple of the grid step 1/{m}")));
                }
                let shift = (steps / u128::from(b)) as usize;
                let mut out = vec![0.0; v.len()];
                for (i, &x) in v.iter().enumerate() {
                    out[(i + shift) % v.len()] = x;
                }
                Some(out)
            }
        };
        Self::new(atoms, ac)
    }

    /// ∫ e^{−2πik·t} dm(t), grid part by the trapezoid rule.
    pub fn fourier_coefficient(&self, k: i64) -> Complex64 {
        let mut s: Complex64 = self
            .atoms
            .iter()
            .map(|a| {
                let den = a.position.den as i128;
                let phase = (i128::from(k) * a.position.num as i128).rem_euclid(den) as f64 / den as f64;
                Complex64::from_polar(a.weight, -std::f64::consts::TAU * phase)
            })
            .sum();
        if let Some(v) = &self.ac {
            let m = v.len() as i64;
            let grid: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let phase = (k.rem_euclid(m) * i as i64).rem_euclid(m) as f64 / m as f64;
                    Complex64::from_polar(x, -std::f64::consts::TAU * phase)
                })
                .sum();
            s += grid / m as f64;
        }
        s
    }
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    num: u64,
    den: u64,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct AcJson {
    grid_size: usize,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    atoms: Vec<AtomJson>,
    ac: Option<AcJson>,
    mass: f64,
}

impl Serialize for CircleMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureJson {
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomJson { num: a.position.num, den: a.position.den, weight: a.weight })
                .collect(),
            ac: self.ac.as_ref().map(|v| AcJson { grid_size: v.len(), values: v.clone() }),
            mass: self.total_mass,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MeasureJson::deserialize(d)?;
        if let Some(ac) = &raw.ac {
            if ac.grid_size != ac.values.len() {
                return Err(D::Error::custom("ac.grid_size does not match the number of values"));
            }
        }
        let atoms = raw
            .atoms
            .into_iter()
            .map(|a| Position::new(a.num, a.den).map(|p| (p, a.weight)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let m = CircleMeasure::new(atoms, raw.ac.map(|a| a.values)).map_err(D::Error::custom)?;
        if (m.total_mass - raw.mass).abs() > 1e-9 * raw.mass.abs().max(1.0) {
            return Err(D::Error::custom(format!("stated mass {} disagrees with contents {}", raw.mass, m.total_mass)));
        }
        Ok(m)
    }
}
