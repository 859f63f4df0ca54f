//! Prime generation, indexing and factorization by trial division.
//!
//! [`PrimeTable`] materializes the primes up to a limit and grows by
//! segmented re-sieving when an index or bound beyond the current limit is
//! requested. [`Primes`] wraps a table for shared use from several threads.

use std::sync::RwLock;

use crate::{Error, Result};

/// All primes up to a limit, in increasing order.
///
/// Access by 1-based index follows the usual convention `p_1 = 2`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

/// Sieves all primes `<= limit`.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::domain(format!("sieve limit must be >= 2, got {limit}")));
    }
    Ok(PrimeTable::with_limit(limit))
}

impl PrimeTable {
    fn with_limit(limit: u64) -> PrimeTable {
        let mut t = PrimeTable { limit: 1, primes: Vec::new() };
        t.extend_to(limit);
        t
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Extends the table so that it contains every prime `<= new_limit`.
    pub fn extend_to(&mut self, new_limit: u64) {
        if new_limit <= self.limit {
            return;
        }
        if self.limit < 2 {
            // dense base sieve, exactly to the requested limit
            let mut is_comp = vec![false; (new_limit + 1) as usize];
            let mut p = 2u64;
            while p * p <= new_limit {
                if !is_comp[p as usize] {
                    let mut k = p * p;
                    while k <= new_limit {
                        is_comp[k as usize] = true;
                        k += p;
                    }
                }
                p += 1;
            }
            self.primes = (2..=new_limit).filter(|&n| !is_comp[n as usize]).collect();
            self.limit = new_limit;
            return;
        }
        // segmented extension; base primes up to sqrt(new_limit) must already
        // be present, which doubling guarantees
        let mut target = self.limit;
        while target < new_limit {
            target = target.saturating_mul(2);
        }
        while (self.limit as u128) * (self.limit as u128) < target as u128 {
            let next = self.limit * self.limit;
            self.sieve_segment_into(self.limit + 1, next);
            self.limit = next;
        }
        self.sieve_segment_into(self.limit + 1, target);
        self.limit = target;
    }

    fn sieve_segment_into(&mut self, lo: u64, hi: u64) {
        let mut out = Vec::new();
        each_prime_in_segment(lo, hi + 1, &self.primes, |p| out.push(p));
        self.primes.extend(out);
    }

    /// The `j`-th prime, 1-indexed; grows the table on demand.
    pub fn nth(&mut self, j: usize) -> Result<u64> {
        if j == 0 {
            return Err(Error::domain("prime index is 1-based; got 0"));
        }
        while self.primes.len() < j {
            let grown = nth_prime_upper_bound(j).max(self.limit * 2);
            self.extend_to(grown);
        }
        Ok(self.primes[j - 1])
    }

    /// 1-based index of `p` if `p` is prime, `None` otherwise.
    pub fn index_of(&mut self, p: u64) -> Option<usize> {
        self.extend_to(p);
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    /// Number of primes `<= x`.
    pub fn count_leq(&mut self, x: u64) -> usize {
        if x < 2 {
            return 0;
        }
        self.extend_to(x);
        self.primes.partition_point(|&p| p <= x)
    }

    pub fn is_prime(&mut self, x: u64) -> bool {
        self.index_of(x).is_some()
    }
}

/// Upper bound for the `j`-th prime (1-indexed), valid for all `j >= 1`.
fn nth_prime_upper_bound(j: usize) -> u64 {
    if j < 6 {
        return 16;
    }
    let n = j as f64;
    (n * (n.ln() + n.ln().ln())).ceil() as u64 + 16
}

/// Calls `f` with every prime in `[lo, hi)` in increasing order.
///
/// `base` must contain every prime `<= sqrt(hi - 1)`. Runs in
/// `O((hi - lo) log log hi)` with a bitset over the segment only, so the
/// caller can stream over ranges far beyond what it would materialize.
pub fn each_prime_in_segment(lo: u64, hi: u64, base: &[u64], mut f: impl FnMut(u64)) {
    if hi <= lo {
        return;
    }
    let lo = lo.max(2);
    let len = (hi - lo) as usize;
    let mut is_comp = vec![false; len];
    let root = (hi - 1).isqrt();
    for &p in base {
        if p > root {
            break;
        }
        let mut start = lo.div_ceil(p) * p;
        if start < p * p {
            start = p * p;
        }
        let mut k = start;
        while k < hi {
            is_comp[(k - lo) as usize] = true;
            k += p;
        }
    }
    for (i, &c) in is_comp.iter().enumerate() {
        if !c {
            f(lo + i as u64);
        }
    }
}

/// Thread-safe shared prime table.
///
/// Reads take a shared lock; extension re-checks under the write lock, so
/// concurrent growth is idempotent.
#[derive(Debug)]
pub struct Primes {
    inner: RwLock<PrimeTable>,
}

impl Primes {
    pub fn new() -> Primes {
        Primes { inner: RwLock::new(PrimeTable::with_limit(1 << 10)) }
    }

    pub fn nth(&self, j: usize) -> Result<u64> {
        if j == 0 {
            return Err(Error::domain("prime index is 1-based; got 0"));
        }
        {
            let t = self.inner.read().unwrap();
            if t.primes.len() >= j {
                return Ok(t.primes[j - 1]);
            }
        }
        self.inner.write().unwrap().nth(j)
    }

    pub fn index_of(&self, p: u64) -> Option<usize> {
        {
            let t = self.inner.read().unwrap();
            if t.limit >= p {
                return t.primes.binary_search(&p).ok().map(|i| i + 1);
            }
        }
        self.inner.write().unwrap().index_of(p)
    }

    pub fn count_leq(&self, x: u64) -> usize {
        {
            let t = self.inner.read().unwrap();
            if t.limit >= x {
                return t.primes.partition_point(|&p| p <= x);
            }
        }
        self.inner.write().unwrap().count_leq(x)
    }

    pub fn is_prime(&self, x: u64) -> bool {
        self.index_of(x).is_some()
    }
}

impl Default for Primes {
    fn default() -> Self {
        Self::new()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // this witness set decides primality for all n < 3.3 * 10^24
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `|k|` in increasing order; empty for `|k| = 1`.
///
/// Exact: trial division by 2, 3 and the 6k±1 wheel, with a Miller–Rabin
/// shortcut once the cofactor is known prime. Inputs are desk scale
/// (`|k|` fits in `u128`).
pub fn distinct_prime_factors_u128(k: u128) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::domain("0 has no prime factorization; handle it as exceptional"));
    }
    Ok(factor_u128(k).into_iter().map(|(p, _)| p).collect())
}

/// Full factorization of `k > 0` as `(prime, multiplicity)` pairs.
pub fn factor_u128(mut k: u128) -> Vec<(u64, u32)> {
    assert!(k > 0, "factor_u128 requires a positive argument");
    let mut out = Vec::new();
    let mut push = |p: u64, k: &mut u128| {
        let mut e = 0u32;
        while *k % p as u128 == 0 {
            *k /= p as u128;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut k);
    push(3, &mut k);
    let mut d = 5u64;
    while (d as u128) * (d as u128) <= k {
        if k <= u64::MAX as u128 && is_prime_u64(k as u64) {
            break;
        }
        push(d, &mut k);
        push(d + 2, &mut k);
        d += 6;
    }
    if k > 1 {
        assert!(k <= u64::MAX as u128, "prime cofactor {k} exceeds u64; input is beyond desk scale");
        out.push((k as u64, 1));
    }
    out
}

/// Largest prime factor of `k > 0`, or 0 for `k = 1`.
pub fn largest_prime_factor_u128(k: u128) -> u64 {
    factor_u128(k).last().map(|&(p, _)| p).unwrap_or(0)
}

/// Number of distinct prime factors of `k > 0`.
pub fn omega_u128(k: u128) -> u32 {
    factor_u128(k).len() as u32
}
