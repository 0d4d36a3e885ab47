//! Finite positive measures on the circle ℝ/ℤ and the affinity calculus.
//!
//! A [`CircleMeasure`] is a finite list of atoms at exact reduced rational
//! positions plus an optional density sampled on a uniform grid. Densities are
//! taken with respect to normalized Lebesgue measure dx/2π, so the constant
//! density 1 has mass 1. Atoms never contribute to density integrals.

mod affinity;
mod checks;
mod measure;

pub use affinity::{affinity, hellinger};
pub use checks::{
    bellow_losert_check, l1_sqrt_bound_check, semicontinuity_check, BellowLosertReport, BellowLosertRow,
    CheckConfig, L1SqrtReport, SemicontinuityReport,
};
pub use measure::{Atom, CircleMeasure, Position};
