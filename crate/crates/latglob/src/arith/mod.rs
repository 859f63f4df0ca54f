//! Exact integer and rational primitives: prime generation and indexing,
//! modular linear algebra, gcd of maximal minors, polynomial evaluation,
//! Taylor shifts and discriminants.
//!
//! Everything here is exact; floating point appears only in [`crate::analytic`].
//! All operations are pure functions on immutable inputs. [`Primes`] is the
//! one growing structure and synchronizes internally.

mod matrix;
mod poly;
mod primes;

pub use matrix::{n_minor_gcd, rank_mod_p, IntMatrix};
pub use poly::{discriminant, resultant, taylor_shift, IntPolynomial, MultiPoly};
pub use primes::{
    distinct_prime_factors_u128, each_prime_in_segment, factor_u128, is_prime_u64,
    largest_prime_factor_u128, omega_u128, sieve_primes, PrimeTable, Primes,
};

pub(crate) use matrix::{column_subsets, rank_mod_p_u64};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// Distinct prime divisors of `|k|`, increasing; empty for `|k| = 1`.
///
/// Errors on `k = 0`: the zero invariant marks a point of the exceptional
/// set and must be routed there by the caller.
pub fn distinct_prime_divisors(k: &BigInt) -> Result<Vec<u64>> {
    if k.is_zero() {
        return Err(Error::domain("0 has no prime factorization; handle it as exceptional"));
    }
    let mag = k.abs();
    let as_u128 = u128::try_from(mag.magnitude().clone())
        .map_err(|_| Error::domain("factorization input beyond desk scale (does not fit u128)"))?;
    distinct_prime_factors_u128(as_u128)
}
