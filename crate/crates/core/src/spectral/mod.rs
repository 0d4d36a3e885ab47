//! Empirical spectral analysis of bounded sequences.

mod correlation;
mod diagnostics;
mod fft;
mod mirsky;
mod musq;
mod periodogram;

pub use correlation::{autocorrelation, autocorrelation_direct, sliding_dot, CorrelationTable, SlidingDot};
pub use diagnostics::{
    davenport_sup, elliott_correlations, flatness, mu_squared_correlations, Flatness,
};
pub use mirsky::{mirsky_coefficient, truncation_tail_bound, MirskyProducts, DEFAULT_PRIME_CUTOFF};
pub use musq::{mu_squared_spectrum, AtomRing, MuSquaredSpectrum};
pub use periodogram::{periodogram, trig_poly_values, Periodogram};

use num_complex::Complex64;

/// Lift a real sequence into the complex plane.
pub fn to_complex(xs: &[f64]) -> Vec<Complex64> {
    xs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}
