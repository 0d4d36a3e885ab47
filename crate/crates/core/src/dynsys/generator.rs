use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::{CounterSigns, STREAM_RANDOM_SHIFT};

/// Default number of phase bins used to symbolize circle-valued sequences.
pub const DEFAULT_BINS: u32 = 64;

/// A point of ℝ/ℤ as the exact fraction raw/2⁶⁴.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase(pub u64);

impl Phase {
    /// frac(golden ratio) = (√5 − 1)/2.
    pub const GOLDEN: Phase = Phase(0x9E37_79B9_7F4A_7C15);
    /// √2 − 1.
    pub const SQRT2_MINUS_1: Phase = Phase(0x6A09_E667_F3BC_C908);

    pub fn from_f64(x: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(invalid(format!("phase {x} outside [0, 1)")));
        }
        Ok(Phase((x * 2f64.powi(64)) as u64))
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2f64.powi(64)
    }

    fn to_unit(self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.as_f64())
    }

    fn bin(self, bins: u32) -> u32 {
        ((u128::from(self.0) * u128::from(bins)) >> 64) as u32
    }
}

/// Deterministic sequences g_n = f(Tⁿx) with |g_n| ≤ 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceGenerator {
    /// e^{2πinα}
    Rotation { alpha: Phase },
    /// e^{2πin²α}
    QuadraticWeyl { alpha: Phase },
    /// (−1)^{s₂(n)}
    ThueMorse,
    /// exp(2πi Σ phases[digit]) over the base-q digits of n; phases[0] = 0.
    QMultiplicative { q: u32, phases: Vec<Phase> },
    /// Fair ±1 signs from a counter-based stream; the positive-entropy control.
    RandomShift { seed: u64 },
    /// g ≡ 1.
    Constant,
}

impl SequenceGenerator {
    pub fn rotation(alpha: f64) -> Result<Self> {
        Ok(Self::Rotation { alpha: Phase::from_f64(alpha)? })
    }

    pub fn quadratic_weyl(alpha: f64) -> Result<Self> {
        Ok(Self::QuadraticWeyl { alpha: Phase::from_f64(alpha)? })
    }

    pub fn q_multiplicative(q: u32, phases: &[f64]) -> Result<Self> {
        if q < 2 {
            return Err(invalid("q must be at least 2"));
        }
        if phases.len() != q as usize {
            return Err(invalid(format!("need {q} digit phases, got {}", phases.len())));
        }
        if phases[0] != 0.0 {
            return Err(invalid("the phase of digit 0 must be 0"));
        }
        let phases = phases.iter().map(|&p| Phase::from_f64(p)).collect::<Result<_>>()?;
        Ok(Self::QMultiplicative { q, phases })
    }

    /// Parses the names used on the command line.
    pub fn from_name(name: &str, seed: u64) -> Result<Self> {
        Ok(match name {
            "rotation" => Self::Rotation { alpha: Phase::GOLDEN },
            "quadratic_weyl" => Self::QuadraticWeyl { alpha: Phase::SQRT2_MINUS_1 },
            "thue_morse" => Self::ThueMorse,
            "q_multiplicative" => Self::q_multiplicative(3, &[0.0, 1.0 / 3.0, 2.0 / 3.0])?,
            "random_shift" => Self::RandomShift { seed },
            "constant" => Self::Constant,
            other => return Err(invalid(format!("unknown system {other:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Rotation { .. } => "rotation",
            Self::QuadraticWeyl { .. } => "quadratic_weyl",
            Self::ThueMorse => "thue_morse",
            Self::QMultiplicative { .. } => "q_multiplicative",
            Self::RandomShift { .. } => "random_shift",
            Self::Constant => "constant",
        }
    }

    /// Only the random shift has positive topological entropy.
    pub fn has_zero_entropy(&self) -> bool {
        !matches!(self, Self::RandomShift { .. })
    }

    fn is_sign_valued(&self) -> bool {
        matches!(self, Self::ThueMorse | Self::RandomShift { .. } | Self::Constant)
    }

    fn phase(&self, n: u64) -> Phase {
        match self {
            Self::Rotation { alpha } => Phase(n.wrapping_mul(alpha.0)),
            Self::QuadraticWeyl { alpha } => Phase(n.wrapping_mul(n).wrapping_mul(alpha.0)),
            Self::QMultiplicative { q, phases } => {
                let q = u64::from(*q);
                let (mut rest, mut acc) = (n, 0u64);
                while rest > 0 {
                    acc = acc.wrapping_add(phases[(rest % q) as usize].0);
                    rest /= q;
                }
                Phase(acc)
            }
            Self::ThueMorse => Phase(if n.count_ones().is_multiple_of(2) { 0 } else { 1 << 63 }),
            Self::Constant => Phase(0),
            Self::RandomShift { seed } => {
                let s = CounterSigns::new(*seed, STREAM_RANDOM_SHIFT).sign(n);
                Phase(if s > 0 { 0 } else { 1 << 63 })
            }
        }
    }

    pub fn value(&self, n: u64) -> Complex64 {
        match self {
            Self::ThueMorse | Self::Constant | Self::RandomShift { .. } => {
                let re = if self.phase(n).0 == 0 { 1.0 } else { -1.0 };
                Complex64::new(re, 0.0)
            }
            _ => self.phase(n).to_unit(),
        }
    }

    /// g_start, …, g_{start+len−1}.
    pub fn values(&self, start: u64, len: usize) -> Vec<Complex64> {
        if let Self::RandomShift { seed } = self {
            let mut signs = vec![0i8; len];
            CounterSigns::new(*seed, STREAM_RANDOM_SHIFT).fill(start, &mut signs);
            return signs.into_iter().map(|s| Complex64::new(f64::from(s), 0.0)).collect();
        }
        (start..start + len as u64).map(|n| self.value(n)).collect()
    }

    /// g_0, …, g_{n−1}.
    pub fn generate(&self, n: usize) -> Result<Vec<Complex64>> {
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        Ok(self.values(0, n))
    }

    /// Alphabet size of [`Self::symbols`].
    pub fn alphabet_size(&self, bins: u32) -> u32 {
        if self.is_sign_valued() {
            2
        } else {
            bins
        }
    }

    /// Symbolic coding: ±1 sequences map to {0, 1}; circle-valued ones to the
    /// index of the phase bin among `bins` equal arcs.
    pub fn symbols(&self, start: u64, len: usize, bins: u32) -> Result<Vec<u32>> {
        if bins == 0 {
            return Err(invalid("bins must be positive"));
        }
        if self.is_sign_valued() {
            return Ok(self.values(start, len).iter().map(|z| u32::from(z.re < 0.0)).collect());
        }
        Ok((start..start + len as u64).map(|n| self.phase(n).bin(bins)).collect())
    }
}

impl fmt::Display for SequenceGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rotation { alpha } | Self::QuadraticWeyl { alpha } => {
                write!(f, "{}(α={:.12})", self.name(), alpha.as_f64())
            }
            Self::QMultiplicative { q, .. } => write!(f, "q_multiplicative(q={q})"),
            Self::RandomShift { seed } => write!(f, "random_shift(seed={seed})"),
            _ => f.write_str(self.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_morse_prefix() {
        let g = SequenceGenerator::ThueMorse.generate(8).unwrap();
        let expect = [1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0];
        // Digit-sum oracle.
        for (n, v) in g.iter().enumerate() {
            let oracle = if format!("{n:b}").matches('1').count() % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(v.re, oracle);
            assert_eq!(v.re, expect[n]);
        }
    }

    #[test]
    fn rotation_zero_is_constant() {
        let g = SequenceGenerator::rotation(0.0).unwrap().generate(50).unwrap();
        assert!(g.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn bounded_and_deterministic() {
        let zoo = [
            SequenceGenerator::Rotation { alpha: Phase::GOLDEN },
            SequenceGenerator::QuadraticWeyl { alpha: Phase::SQRT2_MINUS_1 },
            SequenceGenerator::ThueMorse,
            SequenceGenerator::q_multiplicative(3, &[0.0, 0.25, 0.5]).unwrap(),
            SequenceGenerator::RandomShift { seed: 9 },
        ];
        for g in &zoo {
            let a = g.generate(1000).unwrap();
            assert_eq!(a, g.generate(1000).unwrap());
            assert!(a.iter().all(|z| z.norm() <= 1.0 + 1e-15));
            assert_eq!(g.values(500, 10), a[500..510].to_vec());
        }
    }

    #[test]
    fn q_multiplicative_two_is_thue_morse() {
        let q = SequenceGenerator::q_multiplicative(2, &[0.0, 0.5]).unwrap();
        let tm = SequenceGenerator::ThueMorse.generate(256).unwrap();
        for (a, b) in q.generate(256).unwrap().iter().zip(&tm) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(SequenceGenerator::q_multiplicative(2, &[0.1, 0.5]).is_err());
        assert!(SequenceGenerator::q_multiplicative(3, &[0.0, 0.5]).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(SequenceGenerator::rotation(1.0).is_err());
        assert!(SequenceGenerator::rotation(-0.1).is_err());
        assert!(SequenceGenerator::ThueMorse.generate(0).is_err());
        assert!(SequenceGenerator::from_name("nope", 0).is_err());
    }

    #[test]
    fn quadratic_weyl_autocorrelation_is_small() {
        // g_{j+k}·conj(g_j) = e^{2πi(2jk + k²)α}: a geometric series in j.
        let alpha = 0.414_213_562_373_095;
        let n = 4096;
        let g = SequenceGenerator::quadratic_weyl(alpha).unwrap().generate(n).unwrap();
        let t = crate::spectral::autocorrelation(&g, 8).unwrap();
        for k in 1..=8usize {
            let s = (std::f64::consts::TAU * k as f64 * alpha * 2.0).sin().abs();
            let bound = 2.0 / (n as f64 * s) + k as f64 / n as f64;
            assert!(t.f_hat[k].norm() <= bound, "k={k}");
        }
    }

    #[test]
    fn symbols() {
        let s = SequenceGenerator::ThueMorse.symbols(0, 4, 64).unwrap();
        assert_eq!(s, vec![0, 1, 1, 0]);
        let r = SequenceGenerator::Rotation { alpha: Phase(1 << 62) }.symbols(0, 4, 4).unwrap();
        assert_eq!(r, vec![0, 1, 2, 3]);
    }
}
