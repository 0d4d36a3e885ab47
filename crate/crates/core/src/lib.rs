//! Computational laboratory for Möbius correlations and spectral measures.
//!
//! * [`arith`]: segmented sieve for μ, μ², ω; Mertens, Landau and squarefree sums.
//! * [`spectral`]: autocorrelations, periodograms, Mirsky coefficients, the
//!   atomic spectral measure of μ², Elliott correlations, flatness and
//!   Davenport diagnostics.
//! * [`measures`]: circle measures with exact rational atoms plus gridded
//!   densities; affinity and Hellinger distance, and the inequality checks built on them.
//! * [`dynsys`]: deterministic sequence generators, block-complexity entropy,
//!   orthogonality sums.
//! * [`randmodel`]: the random Möbius model, block averages and concentration experiments.
//! * [`cli`]: run configuration and the experiment driver behind the `mlab` binary.

// `!(x > 0.0)` is used on purpose so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod arith;
pub mod cli;
pub mod dynsys;
pub mod error;
pub mod measures;
pub mod numeric;
pub mod output;
pub mod randmodel;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
