//! The `LocalSystem` contract and the built-in systems.
//!
//! A local system fixes, for every prime `p`, a subset `U_p` of `Z_p^d`
//! with exact Haar measure `s_p`, plus an archimedean constant
//! `s_infinity` (zero for every built-in: `U_infinity` is empty). The
//! contract exposes exact membership of lattice points, exact measures,
//! the exceptional set of points lying in infinitely many `U_p`, and the
//! exact place-set bookkeeping the estimators need.
//!
//! Built-ins:
//!
//! * [`minors_system`] — points are `n x m` integer matrices (`n < m`,
//!   row-major); `U_p` is the rank-deficient locus mod `p`. With `n = 1`
//!   this is the non-coprime `m`-tuple system.
//! * [`eisenstein_system`] — points are degree-`d` coefficient tuples
//!   `(a_0, .., a_d)`; `U_p` is the p-Eisenstein locus.
//! * [`shifted_eisenstein_system`] — `U_p` is the locus of tuples some
//!   integer shift of which is p-Eisenstein.
//! * [`counterexample_a`], [`counterexample_b`], [`counterexample_c`] —
//!   dimension-1 systems whose local measures all vanish while the
//!   empirical mean oscillates (A) or diverges (B, C). They witness that
//!   the prediction `mean = Σ s_p` needs more than convergence of the
//!   underlying densities.

mod counterexamples;
mod eisenstein;
mod minors;

pub use counterexamples::{counterexample_a, counterexample_b, counterexample_c};
pub use eisenstein::{eisenstein_system, shifted_eisenstein_system};
pub use minors::minors_system;

use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::Primes;
use crate::{Error, Result};

/// A place of `Q`: a prime or the archimedean place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        if s == "inf" || s == "oo" {
            return Ok(Place::Infinity);
        }
        let p: u64 = s.parse().map_err(|_| Error::domain(format!("not a place: {s:?}")))?;
        if !crate::arith::is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p))
    }
}

/// How the empirical mean of a system behaves as the box grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanBehavior {
    /// The mean exists and equals the prime series plus `s_infinity`.
    ConvergesToSeries,
    /// The mean does not exist: distinct subsequences reach distinct limits.
    Oscillates,
    /// The box averages grow without bound.
    Diverges,
}

impl MeanBehavior {
    pub fn note(self) -> &'static str {
        match self {
            MeanBehavior::ConvergesToSeries => "mean exists and equals the local-measure series",
            MeanBehavior::Oscillates => {
                "mean does not exist: box averages oscillate between distinct subsequence \
                 limits; the series prediction is not the mean"
            }
            MeanBehavior::Diverges => {
                "mean diverges: box averages grow without bound; the series prediction is \
                 not the mean"
            }
        }
    }
}

/// One local set per place, with exact measures and exact place bookkeeping.
///
/// Implementations are immutable after construction up to internal memo
/// tables, which must be safe under concurrent reads and idempotent under
/// concurrent insertion: every method takes `&self` and box scans call them
/// from many workers.
pub trait LocalSystem: Send + Sync {
    /// Addressable key, e.g. `minors:n=2,m=3`.
    fn key(&self) -> String;

    /// Dimension `d` of the ambient lattice `Z^d`.
    fn dimension(&self) -> usize;

    /// Scaled measure of the archimedean set; zero for every built-in.
    fn s_infinity(&self) -> BigRational {
        BigRational::zero()
    }

    /// Membership of a lattice point in the archimedean set.
    fn contains_infinity(&self, _point: &[i64]) -> bool {
        false
    }

    /// Whether the point lies in `U_p`. Total and deterministic for every
    /// lattice point and prime.
    fn contains(&self, point: &[i64], p: u64) -> bool;

    /// Exact Haar measure of `U_p`, in `[0, 1]`.
    fn local_measure(&self, p: u64) -> BigRational;

    /// Whether the point lies in infinitely many `U_p`.
    fn is_exceptional(&self, point: &[i64]) -> bool;

    /// A bound `B` with `contains(point, p) == false` for all primes
    /// `p > B`, when one is representable at desk scale. For
    /// non-exceptional points the support is finite even when this
    /// returns `None`; `Some(0)` means no prime contains the point.
    fn prime_support_bound(&self, point: &[i64]) -> Option<u128>;

    /// Exact number of primes `p > threshold` with `contains(point, p)`.
    ///
    /// Precondition: the point is not exceptional. This is the
    /// load-bearing exact count; with `threshold = 0` it is `|P(point)|`,
    /// the number of places containing the point.
    fn support_count_above(&self, point: &[i64], threshold: u64) -> Result<u128> {
        Ok(self.support_places(point)?.iter().filter(|&&p| p > threshold).count() as u128)
    }

    /// The exact set `P(point)` of primes containing the point, increasing.
    ///
    /// Precondition: the point is not exceptional. Errors with
    /// [`Error::SupportUnrepresentable`] when the set is finite but
    /// involves primes far beyond desk scale.
    fn support_places(&self, point: &[i64]) -> Result<Vec<u64>> {
        let Some(bound) = self.prime_support_bound(point) else {
            return Err(Error::Integrity(format!(
                "system {} has neither a support bound nor a support enumeration \
                 for a non-exceptional point",
                self.key()
            )));
        };
        let bound = u64::try_from(bound).map_err(|_| {
            Error::SupportUnrepresentable(format!("support bound {bound} exceeds u64"))
        })?;
        let primes = shared_primes();
        let count = primes.count_leq(bound);
        let mut out = Vec::new();
        for j in 1..=count {
            let p = primes.nth(j)?;
            if self.contains(point, p) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Constant `c` with `s_p <= c / p^2` for every prime; `0` when every
    /// local measure vanishes. Drives series and product truncation.
    fn tail_majorant_c(&self) -> f64;

    /// Per-prime occupancy majorant `v_p`: `|U_p ∩ box_I| <= v_p (2H)^d`
    /// for every box with `p < H`. `None` when no summable majorant
    /// exists.
    fn occupancy_majorant(&self, p: u64) -> Option<BigRational>;

    /// Human-readable name of the majorant family.
    fn occupancy_majorant_name(&self) -> &'static str;

    /// What the empirical mean does for this system.
    fn mean_behavior(&self) -> MeanBehavior;
}

/// Prime table shared by the systems that index primes.
pub(crate) fn shared_primes() -> &'static Primes {
    static PRIMES: OnceLock<Primes> = OnceLock::new();
    PRIMES.get_or_init(Primes::new)
}

/// Exact rational `num / p^k`.
pub(crate) fn ratio_over_prime_power(num: BigUint, p: u64, k: u32) -> BigRational {
    BigRational::new(num.into(), BigInt::from(BigUint::from(p).pow(k)))
}

/// Parses a system key: `minors:n=1,m=2`, `eisenstein:d=2`,
/// `shifted-eisenstein:d=3`, `cex:A`, `cex:B`, `cex:C`.
pub fn from_key(key: &str) -> Result<Arc<dyn LocalSystem>> {
    let invalid = || {
        Error::domain(format!(
            "unknown system {key:?}; valid keys: minors:n=<n>,m=<m> (n < m), \
             eisenstein:d=<d> (d >= 2), shifted-eisenstein:d=<d> (d >= 3), cex:A, cex:B, cex:C"
        ))
    };
    let (head, params) = key.split_once(':').ok_or_else(invalid)?;
    let parse_params = |s: &str| -> Result<Vec<(String, u64)>> {
        s.split(',')
            .map(|kv| {
                let (k, v) = kv.split_once('=').ok_or_else(invalid)?;
                let n: u64 = v.trim().parse().map_err(|_| invalid())?;
                Ok((k.trim().to_owned(), n))
            })
            .collect()
    };
    match head {
        "minors" => {
            let ps = parse_params(params)?;
            let get = |name: &str| {
                ps.iter().find(|(k, _)| k == name).map(|&(_, v)| v).ok_or_else(invalid)
            };
            Ok(Arc::new(minors_system(get("n")? as usize, get("m")? as usize)?))
        }
        "eisenstein" => {
            let ps = parse_params(params)?;
            let d = ps.iter().find(|(k, _)| k == "d").map(|&(_, v)| v).ok_or_else(invalid)?;
            Ok(Arc::new(eisenstein_system(d as usize)?))
        }
        "shifted-eisenstein" => {
            let ps = parse_params(params)?;
            let d = ps.iter().find(|(k, _)| k == "d").map(|&(_, v)| v).ok_or_else(invalid)?;
            Ok(Arc::new(shifted_eisenstein_system(d as usize)?))
        }
        "cex" => match params {
            "A" => Ok(Arc::new(counterexample_a())),
            "B" => Ok(Arc::new(counterexample_b())),
            "C" => Ok(Arc::new(counterexample_c())),
            _ => Err(invalid()),
        },
        _ => Err(invalid()),
    }
}

/// Every built-in system key, for help output and sweeps over systems.
pub fn builtin_keys() -> Vec<&'static str> {
    vec![
        "minors:n=1,m=2",
        "minors:n=2,m=3",
        "eisenstein:d=2",
        "shifted-eisenstein:d=3",
        "cex:A",
        "cex:B",
        "cex:C",
    ]
}
