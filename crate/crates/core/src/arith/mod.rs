//! Exact arithmetic substrate: a segmented sieve for μ, μ² and ω, the
//! classical partial sums built on it, and a binary table cache.

mod cache;
mod sieve;
mod sums;

pub use cache::{read_cache, write_cache, CACHE_MAGIC};
pub use sieve::{primes_up_to, sieve, sieve_with, SieveOptions, SieveTable, DEFAULT_SEGMENT};
pub use sums::{landau_sum, mertens, squarefree_density};
