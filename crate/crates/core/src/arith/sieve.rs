use rayon::prelude::*;

use crate::error::{invalid, Error, Result};

/// Default number of integers sieved per segment.
pub const DEFAULT_SEGMENT: usize = 1 << 20;

// 2-bit μ codes: 0 ↦ 0, 1 ↦ +1, 2 ↦ −1, 3 reserved.
const CODE_ZERO: u8 = 0;
const CODE_PLUS: u8 = 1;
const CODE_MINUS: u8 = 2;

#[inline]
fn encode(mu: i8) -> u8 {
    match mu {
        1 => CODE_PLUS,
        -1 => CODE_MINUS,
        _ => CODE_ZERO,
    }
}

#[inline]
fn decode(code: u8) -> i8 {
    match code {
        CODE_PLUS => 1,
        CODE_MINUS => -1,
        _ => 0,
    }
}

#[derive(Clone, Debug)]
pub struct SieveOptions {
    /// Integers per segment; rounded up to a multiple of 4 so segments own whole bytes.
    pub segment_size: usize,
    pub with_omega: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SieveOptions {
    fn default() -> Self {
        Self { segment_size: DEFAULT_SEGMENT, with_omega: true, threads: None }
    }
}

/// Immutable table of μ(n) (packed, 2 bits per entry) and optionally ω(n)
/// for 1 ≤ n ≤ n_max. Entry n lives at position n − 1; index 0 is invalid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveTable {
    n_max: u64,
    mu_codes: Vec<u8>,
    omega: Option<Vec<u8>>,
}

impl SieveTable {
    pub(crate) fn from_parts(n_max: u64, mu_codes: Vec<u8>, omega: Option<Vec<u8>>) -> Result<Self> {
        let want = packed_len(n_max);
        if mu_codes.len() != want {
            return Err(invalid(format!("μ block has {} bytes, expected {want}", mu_codes.len())));
        }
        if let Some(w) = &omega {
            if w.len() as u64 != n_max {
                return Err(invalid(format!("ω block has {} bytes, expected {n_max}", w.len())));
            }
        }
        Ok(Self { n_max, mu_codes, omega })
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn has_omega(&self) -> bool {
        self.omega.is_some()
    }

    pub(crate) fn mu_codes(&self) -> &[u8] {
        &self.mu_codes
    }

    pub(crate) fn omega_bytes(&self) -> Option<&[u8]> {
        self.omega.as_deref()
    }

    pub fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.n_max {
            Err(Error::OutOfRange { index: n, lo: 1, hi: self.n_max })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub(crate) fn mu_unchecked(&self, n: u64) -> i8 {
        let i = (n - 1) as usize;
        decode((self.mu_codes[i >> 2] >> ((i & 3) * 2)) & 3)
    }

    pub fn mu(&self, n: u64) -> Result<i8> {
        self.check_index(n)?;
        Ok(self.mu_unchecked(n))
    }

    pub fn mu_squared(&self, n: u64) -> Result<u8> {
        Ok(self.mu(n)?.unsigned_abs())
    }

    pub fn is_squarefree(&self, n: u64) -> Result<bool> {
        Ok(self.mu(n)? != 0)
    }

    pub fn omega(&self, n: u64) -> Result<u8> {
        self.check_index(n)?;
        let w = self
            .omega
            .as_ref()
            .ok_or_else(|| invalid("table was sieved without ω"))?;
        Ok(w[(n - 1) as usize])
    }

    /// μ(n) for n in `lo..=hi`.
    pub fn mu_range(&self, lo: u64, hi: u64) -> Result<Vec<i8>> {
        self.check_index(lo)?;
        self.check_index(hi)?;
        if hi < lo {
            return Ok(Vec::new());
        }
        Ok((lo..=hi).map(|n| self.mu_unchecked(n)).collect())
    }

    /// μ(1..=n) as f64, the usual input to the spectral routines.
    pub fn mu_f64(&self, n: u64) -> Result<Vec<f64>> {
        Ok(self.mu_range(1, n)?.into_iter().map(f64::from).collect())
    }

    /// μ²(1..=n) as f64.
    pub fn mu_squared_f64(&self, n: u64) -> Result<Vec<f64>> {
        Ok(self.mu_range(1, n)?.into_iter().map(|m| f64::from(m.unsigned_abs())).collect())
    }

    pub fn iter_mu(&self) -> impl Iterator<Item = i8> + '_ {
        (1..=self.n_max).map(move |n| self.mu_unchecked(n))
    }
}

pub(crate) fn packed_len(n_max: u64) -> usize {
    n_max.div_ceil(4) as usize
}

fn try_alloc<T: Clone>(what: &'static str, len: usize, fill: T) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::Allocation {
        what,
        bytes: len.saturating_mul(std::mem::size_of::<T>()),
    })?;
    v.resize(len, fill);
    Ok(v)
}

/// Primes p ≤ n by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn sieve(n_max: u64) -> Result<SieveTable> {
    sieve_with(n_max, &SieveOptions::default())
}

pub fn sieve_with(n_max: u64, opts: &SieveOptions) -> Result<SieveTable> {
    if n_max == 0 {
        return Err(invalid("n_max must be at least 1"));
    }
    if opts.segment_size == 0 {
        return Err(invalid("segment size must be positive"));
    }
    let usize_n = usize::try_from(n_max).map_err(|_| Error::Allocation { what: "μ table", bytes: usize::MAX })?;
    let segment = opts.segment_size.div_ceil(4) * 4;
    let primes = primes_up_to(isqrt(n_max));

    let mut mu_codes = try_alloc("μ table", packed_len(n_max), 0u8)?;
    let mut omega = if opts.with_omega { Some(try_alloc("ω table", usize_n, 0u8)?) } else { None };

    let run = |mu_codes: &mut Vec<u8>, omega: &mut Option<Vec<u8>>| {
        let mu_chunks = mu_codes.par_chunks_mut(segment / 4);
        match omega {
            Some(w) => mu_chunks.zip(w.par_chunks_mut(segment)).enumerate().for_each(|(s, (m, w))| {
                sieve_segment(s as u64 * segment as u64 + 1, n_max, &primes, m, Some(w))
            }),
            None => mu_chunks
                .enumerate()
                .for_each(|(s, m)| sieve_segment(s as u64 * segment as u64 + 1, n_max, &primes, m, None)),
        }
    };
    match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| run(&mut mu_codes, &mut omega)),
        None => run(&mut mu_codes, &mut omega),
    }
    SieveTable::from_parts(n_max, mu_codes, omega)
}

/// Sieve integers `lo..lo+len` where `len` is set by the output chunk sizes.
fn sieve_segment(lo: u64, n_max: u64, primes: &[u64], mu_out: &mut [u8], omega_out: Option<&mut [u8]>) {
    let len = ((mu_out.len() * 4) as u64).min(n_max - lo + 1) as usize;
    let hi = lo + len as u64; // exclusive
    // Product of the prime-power parts p^k ≤ √n_max found so far.
    let mut smooth = vec![1u64; len];
    let mut sign = vec![1i8; len];
    let mut count = vec![0u8; len];

    for &p in primes {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m < hi {
            let i = (m - lo) as usize;
            smooth[i] *= p;
            sign[i] = -sign[i];
            count[i] += 1;
            m += p;
        }
        let mut pk = p * p;
        while pk < hi {
            let mut m = lo.div_ceil(pk) * pk;
            while m < hi {
                let i = (m - lo) as usize;
                smooth[i] *= p;
                sign[i] = 0;
                m += pk;
            }
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
    }

    for i in 0..len {
        let n = lo + i as u64;
        if smooth[i] < n {
            // One prime factor above the sieving bound remains.
            sign[i] = -sign[i];
            count[i] += 1;
        }
    }

    for (byte, quad) in mu_out.iter_mut().zip(sign.chunks(4)) {
        let mut b = 0u8;
        for (k, &s) in quad.iter().enumerate() {
            b |= encode(s) << (2 * k);
        }
        *byte = b;
    }
    if let Some(w) = omega_out {
        w[..len].copy_from_slice(&count);
    }
}
