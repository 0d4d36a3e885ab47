//! The random Möbius model: independent fair signs on the squarefree
//! integers, block averages, and the concentration experiments that control them.

mod concentration;
mod experiments;
mod stream;

pub use concentration::{hoeffding_azuma_check, hoeffding_bound, HoeffdingReport, HoeffdingRow};
pub use experiments::{
    borel_cantelli_partial_sum, orthogonality_decay, orthogonality_decay_values, remainder_decomposition, union_bound_experiment, DecayReport,
    Decomposition, SeedDecay, UnionBoundConfig, UnionBoundReport,
};
pub use stream::{block_average, sample, serial_correlation, BlockAverage, RandomMoebiusStream};
