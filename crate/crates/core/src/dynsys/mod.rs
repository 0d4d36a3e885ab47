//! Deterministic sequence generators, block-complexity entropy estimates
//! and orthogonality sums against Möbius-type weights.

mod entropy;
mod generator;
mod orthogonality;

pub use entropy::{block_spanning_count, entropy_estimate, entropy_estimate_symbols, EntropyTable};
pub use generator::{Phase, SequenceGenerator, DEFAULT_BINS};
pub use orthogonality::{orthogonality_sum, Weight};
