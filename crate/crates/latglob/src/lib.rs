//! Exact lattice statistics for local systems over `Z^d`.
//!
//! A *local system* assigns to every prime `p` a subset `U_p` of the p-adic
//! lattice `Z_p^d` together with its exact Haar measure `s_p`. This crate
//! computes, for the systems it ships:
//!
//! * analytic predictions — prime series `Σ s_p`, Euler products
//!   `Π (1 - s_p)` and zeta values, each carried with a rigorous tail
//!   bound ([`analytic`]);
//! * exact empirical estimates — exhaustive enumeration of the integer box
//!   `[-H, H)^d` producing exact rational densities and means
//!   ([`estimate`]);
//! * diagnostics probing the hypotheses under which prediction and estimate
//!   agree, and three counterexample systems on which they provably do not.
//!
//! Box scans are data-parallel. With the default `parallel` feature they run
//! on a rayon pool; without it the same API runs sequentially. All counting
//! arithmetic is exact, so results are bit-identical regardless of worker
//! count.

pub mod analytic;
pub mod arith;
pub mod estimate;
pub mod systems;

use num_bigint::BigUint;

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// Restricted mean over an empty restriction set.
    #[error("empty restriction: no box point lies in any U_p")]
    EmptyRestriction,
    /// Interval for a predicted denominator contains zero.
    #[error("degenerate denominator: predicted density interval contains 0")]
    DegenerateDenominator,
    /// A system violated the `LocalSystem` contract.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// The requested computation exceeds the enumeration budget.
    #[error("budget error: {0}")]
    Budget(String),
    /// The exact place set of a point is finite but not representable
    /// at desk scale.
    #[error("support set not representable: {0}")]
    SupportUnrepresentable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }
}

/// Renders `num/den` as a decimal string with 12 significant digits.
///
/// Used everywhere an exact rational is reported next to its decimal
/// reading, so the rendering is fixed here once.
pub fn decimal12(num: &BigUint, den: &BigUint) -> String {
    use num_traits::Zero;
    if den.is_zero() {
        return "nan".to_owned();
    }
    if num.is_zero() {
        return "0".to_owned();
    }
    // Exact scaling: find e with 10^e <= num/den < 10^(e+1), then read off
    // 12 rounded digits. Stays exact however large the operands are.
    let ten = BigUint::from(10u32);
    let mut e: i64 = 0;
    let mut n = num.clone();
    let mut d = den.clone();
    while n < d {
        n *= &ten;
        e -= 1;
    }
    while n >= &d * &ten {
        d *= &ten;
        e += 1;
    }
    // n/d in [1, 10); produce 12 digits with round-half-up on the 12th.
    let scale = ten.pow(11u32);
    let (q, r) = num_integer::Integer::div_rem(&(n * scale), &d);
    let mut digits = if &r * 2u32 >= d { q + 1u32 } else { q };
    // rounding may carry into a 13th digit
    if digits >= ten.pow(12u32) {
        digits = ten.pow(11u32);
        e += 1;
    }
    let s = digits.to_string();
    debug_assert_eq!(s.len(), 12);
    if (-10..15).contains(&e) {
        if e >= 0 {
            let (int_part, frac_part) = s.split_at(e as usize + 1);
            let frac = frac_part.trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_owned()
            } else {
                format!("{int_part}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            let frac = format!("{zeros}{s}");
            format!("0.{}", frac.trim_end_matches('0'))
        }
    } else {
        let mantissa = format!("{}.{}", &s[..1], s[1..].trim_end_matches('0'));
        let mantissa = mantissa.trim_end_matches('.');
        format!("{mantissa}e{e}")
    }
}

/// Same rendering for a signed rational given as `(negative, num, den)`.
pub fn decimal12_signed(negative: bool, num: &BigUint, den: &BigUint) -> String {
    use num_traits::Zero;
    let s = decimal12(num, den);
    if negative && !num.is_zero() {
        format!("-{s}")
    } else {
        s
    }
}
