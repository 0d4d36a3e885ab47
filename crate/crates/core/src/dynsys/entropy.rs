use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::numeric::ls_slope;

use super::SequenceGenerator;

const HASH_BASE: u64 = 0x100_0000_01b3;

/// Distinct windows: rolling hash → start indices of windows with that hash
/// that are pairwise different.
type BlockSet = HashMap<u64, Vec<usize>>;

fn insert_block(set: &mut BlockSet, symbols: &[u32], m: usize, hash: u64, start: usize) {
    let reps = set.entry(hash).or_default();
    let window = &symbols[start..start + m];
    if !reps.iter().any(|&r| &symbols[r..r + m] == window) {
        reps.push(start);
    }
}

fn shard_blocks(symbols: &[u32], m: usize, lo: usize, hi: usize, top_power: u64) -> BlockSet {
    let mut set = BlockSet::new();
    let mut h = symbols[lo..lo + m]
        .iter()
        .fold(0u64, |acc, &s| acc.wrapping_mul(HASH_BASE).wrapping_add(u64::from(s) + 1));
    insert_block(&mut set, symbols, m, h, lo);
    for i in lo + 1..hi {
        h = h
            .wrapping_sub((u64::from(symbols[i - 1]) + 1).wrapping_mul(top_power))
            .wrapping_mul(HASH_BASE)
            .wrapping_add(u64::from(symbols[i + m - 1]) + 1);
        insert_block(&mut set, symbols, m, h, i);
    }
    set
}

/// Number of distinct length-m windows in `symbols`, found by a rolling hash
/// with every hash match verified symbol by symbol. Requires 1 ≤ m ≤ N/4.
pub fn block_spanning_count(symbols: &[u32], m: usize) -> Result<u64> {
    let n = symbols.len();
    if m == 0 {
        return Err(invalid("block length must be positive"));
    }
    if m > n / 4 {
        return Err(invalid(format!("block length {m} exceeds N/4 = {} for N = {n}", n / 4)));
    }
    let windows = n - m + 1;
    let top_power = (1..m).fold(1u64, |acc, _| acc.wrapping_mul(HASH_BASE));
    let shard = windows.div_ceil(rayon::current_num_threads().max(1)).max(1 << 16);
    let shards: Vec<BlockSet> = (0..windows)
        .step_by(shard)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|lo| shard_blocks(symbols, m, lo, (lo + shard).min(windows), top_power))
        .collect();
    let mut shards = shards.into_iter();
    let mut merged = shards.next().unwrap_or_default();
    for other in shards {
        for (h, reps) in other {
            for r in reps {
                insert_block(&mut merged, symbols, m, h, r);
            }
        }
    }
    Ok(merged.values().map(|v| v.len() as u64).sum())
}

/// Observed block counts r(m) and their growth rate.
#[derive(Clone, Debug, Serialize)]
pub struct EntropyTable {
    pub system: String,
    pub n: usize,
    pub alphabet: u32,
    pub m_list: Vec<usize>,
    pub r: Vec<u64>,
    pub log_r_over_m: Vec<f64>,
    /// Least-squares slope of log r(m) against m over the larger half of `m_list`.
    pub slope_estimate: f64,
}

pub fn entropy_estimate_symbols(system: &str, symbols: &[u32], alphabet: u32, m_list: &[usize]) -> Result<EntropyTable> {
    if m_list.is_empty() {
        return Err(invalid("m_list is empty"));
    }
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("m_list must be strictly increasing"));
    }
    let r = m_list.iter().map(|&m| block_spanning_count(symbols, m)).collect::<Result<Vec<_>>>()?;
    let logs: Vec<f64> = r.iter().map(|&c| (c as f64).ln()).collect();
    let log_r_over_m = logs.iter().zip(m_list).map(|(l, &m)| l / m as f64).collect::<Vec<_>>();
    let len = m_list.len();
    let slope_estimate = if len == 1 {
        log_r_over_m[0]
    } else {
        let start = (len / 2).min(len - 2);
        let xs: Vec<f64> = m_list[start..].iter().map(|&m| m as f64).collect();
        ls_slope(&xs, &logs[start..]).unwrap_or(0.0)
    };
    Ok(EntropyTable {
        system: system.to_string(),
        n: symbols.len(),
        alphabet,
        m_list: m_list.to_vec(),
        r,
        log_r_over_m,
        slope_estimate,
    })
}

/// Block-count entropy estimate from the first `n` symbols of `gen`.
pub fn entropy_estimate(gen: &SequenceGenerator, n: usize, m_list: &[usize], bins: u32) -> Result<EntropyTable> {
    let symbols = gen.symbols(0, n, bins)?;
    entropy_estimate_symbols(&gen.to_string(), &symbols, gen.alphabet_size(bins), m_list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute(symbols: &[u32], m: usize) -> u64 {
        symbols.windows(m).collect::<HashSet<_>>().len() as u64
    }

    #[test]
    fn constant_sequence() {
        let s = vec![3u32; 100];
        for m in 1..=25 {
            assert_eq!(block_spanning_count(&s, m).unwrap(), 1);
        }
    }

    #[test]
    fn thue_morse_small_blocks() {
        let s = SequenceGenerator::ThueMorse.symbols(0, 1 << 12, 2).unwrap();
        let got: Vec<u64> = (1..=3).map(|m| block_spanning_count(&s, m).unwrap()).collect();
        assert_eq!(got, vec![2, 4, 6]);
        for m in 1..=40 {
            assert_eq!(block_spanning_count(&s, m).unwrap(), brute(&s, m), "m={m}");
        }
    }

    #[test]
    fn guard_on_block_length() {
        let s = vec![0u32; 100];
        assert!(block_spanning_count(&s, 26).is_err());
        assert!(block_spanning_count(&s, 0).is_err());
    }

    #[test]
    fn shards_merge_exactly() {
        // Long enough to split into several shards.
        let s = SequenceGenerator::RandomShift { seed: 5 }.symbols(0, 300_000, 2).unwrap();
        assert_eq!(block_spanning_count(&s, 14).unwrap(), brute(&s, 14));
    }

    #[test]
    fn counts_monotone_and_alphabet_bounded() {
        let g = SequenceGenerator::Rotation { alpha: super::super::Phase::GOLDEN };
        let t = entropy_estimate(&g, 1 << 14, &[1, 2, 4, 8, 16, 32], 16).unwrap();
        for w in t.r.windows(2) {
            assert!(w[0] <= w[1]);
        }
        let s = g.symbols(0, 1 << 14, 16).unwrap();
        for m in 1..64 {
            let (a, b) = (block_spanning_count(&s, m).unwrap(), block_spanning_count(&s, m + 1).unwrap());
            assert!(b <= 16 * a);
        }
    }

    #[test]
    fn m_list_validation() {
        let g = SequenceGenerator::ThueMorse;
        assert!(entropy_estimate(&g, 1024, &[], 2).is_err());
        assert!(entropy_estimate(&g, 1024, &[4, 2], 2).is_err());
        assert!(entropy_estimate(&g, 1024, &[512], 2).is_err());
    }
}
