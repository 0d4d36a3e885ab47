//! Binary sieve cache.
//!
//! Layout: 8 magic bytes `MUSV0001`, n_max as u64 little-endian, one flag
//! byte (bit 0 set when an ω block follows), ⌈n_max/4⌉ bytes of packed
//! 2-bit μ codes (entry n at bit offset 2(n−1)), then n_max ω bytes if flagged.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

use super::sieve::packed_len;
use super::SieveTable;

pub const CACHE_MAGIC: &[u8; 8] = b"MUSV0001";
const FLAG_OMEGA: u8 = 1;

pub fn write_cache(table: &SieveTable, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(CACHE_MAGIC)?;
    w.write_all(&table.n_max().to_le_bytes())?;
    w.write_all(&[if table.has_omega() { FLAG_OMEGA } else { 0 }])?;
    w.write_all(table.mu_codes())?;
    if let Some(omega) = table.omega_bytes() {
        w.write_all(omega)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cache(path: &Path) -> Result<SieveTable> {
    let bad = |reason: &str| Error::CacheFormat { path: path.to_path_buf(), reason: reason.to_string() };
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(|_| bad("truncated header"))?;
    if &magic != CACHE_MAGIC {
        return Err(bad("magic mismatch, expected MUSV0001"));
    }
    let mut n = [0u8; 8];
    r.read_exact(&mut n).map_err(|_| bad("truncated header"))?;
    let n_max = u64::from_le_bytes(n);
    if n_max == 0 {
        return Err(bad("n_max is zero"));
    }
    let mut flag = [0u8; 1];
    r.read_exact(&mut flag).map_err(|_| bad("truncated header"))?;
    if flag[0] & !FLAG_OMEGA != 0 {
        return Err(bad("unknown flag bits"));
    }
    let mut mu = vec![0u8; packed_len(n_max)];
    r.read_exact(&mut mu).map_err(|_| bad("truncated μ block"))?;
    let omega = if flag[0] & FLAG_OMEGA != 0 {
        let mut w = vec![0u8; n_max as usize];
        r.read_exact(&mut w).map_err(|_| bad("truncated ω block"))?;
        Some(w)
    } else {
        None
    };
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(bad("trailing bytes"));
    }
    SieveTable::from_parts(n_max, mu, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sieve, sieve_with, SieveOptions};

    #[test]
    fn round_trip_with_and_without_omega() {
        let dir = tempfile::tempdir().unwrap();
        for with_omega in [true, false] {
            let t = sieve_with(12_345, &SieveOptions { with_omega, ..Default::default() }).unwrap();
            let p = dir.path().join("t.musv");
            write_cache(&t, &p).unwrap();
            assert_eq!(read_cache(&p).unwrap(), t);
        }
    }

    #[test]
    fn header_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.musv");
        write_cache(&sieve(10).unwrap(), &p).unwrap();
        let bytes = std::fs::read(&p).unwrap();
        assert_eq!(&bytes[..8], b"MUSV0001");
        assert_eq!(u64::from_le_bytes(bytes[8..16].try_into().unwrap()), 10);
        assert_eq!(bytes[16], 1);
        // μ(1..4) = 1, −1, −1, 0 → codes 1, 2, 2, 0
        assert_eq!(bytes[17], 0b00_10_10_01);
        assert_eq!(bytes.len(), 17 + 3 + 10);
    }

    #[test]
    fn rejects_bad_magic_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.musv");
        write_cache(&sieve(100).unwrap(), &p).unwrap();
        let mut bytes = std::fs::read(&p).unwrap();
        let q = dir.path().join("short.musv");
        std::fs::write(&q, &bytes[..30]).unwrap();
        assert!(matches!(read_cache(&q), Err(Error::CacheFormat { .. })));
        bytes[7] = b'2';
        std::fs::write(&p, &bytes).unwrap();
        assert!(matches!(read_cache(&p), Err(Error::CacheFormat { .. })));
    }
}
