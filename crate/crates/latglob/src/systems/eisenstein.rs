//! Eisenstein and shifted-Eisenstein coefficient-tuple systems.
//!
//! Points are tuples `(a_0, .., a_d)`, constant term first. A tuple is
//! p-Eisenstein when `p` divides `a_0, .., a_(d-1)`, `p` does not divide
//! `a_d`, and `p^2` does not divide `a_0`. The shifted variant asks for
//! some integer shift `i` with `f(x+i)` p-Eisenstein; `i` can always be
//! chosen in `[0, p)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{discriminant, distinct_prime_factors_u128, largest_prime_factor_u128, IntPolynomial};
use crate::{Error, Result};

use super::{ratio_over_prime_power, LocalSystem, MeanBehavior};

/// The p-Eisenstein locus for degree-`d` tuples; ambient dimension `d + 1`.
pub struct EisensteinSystem {
    d: usize,
}

/// Builds the degree-`d` Eisenstein system; requires `d >= 2`.
pub fn eisenstein_system(d: usize) -> Result<EisensteinSystem> {
    if d < 2 {
        return Err(Error::domain(format!(
            "eisenstein system needs d >= 2 (the majorant series diverges below), got {d}"
        )));
    }
    Ok(EisensteinSystem { d })
}

/// Is the tuple p-Eisenstein? Exact for any `i64` tuple and `u64` prime.
fn is_eisenstein(coeffs: &[i64], p: u64) -> bool {
    let d = coeffs.len() - 1;
    let pw = p as i128;
    if (coeffs[d] as i128).rem_euclid(pw) == 0 {
        return false;
    }
    if coeffs[..d].iter().any(|&c| (c as i128).rem_euclid(pw) != 0) {
        return false;
    }
    (coeffs[0] as i128).rem_euclid(pw * pw) != 0
}

impl LocalSystem for EisensteinSystem {
    fn key(&self) -> String {
        format!("eisenstein:d={}", self.d)
    }

    fn dimension(&self) -> usize {
        self.d + 1
    }

    fn contains(&self, point: &[i64], p: u64) -> bool {
        debug_assert_eq!(point.len(), self.dimension());
        is_eisenstein(point, p)
    }

    fn local_measure(&self, p: u64) -> BigRational {
        // (p - 1)^2 / p^(d + 2)
        let num = BigUint::from(p - 1) * BigUint::from(p - 1);
        ratio_over_prime_power(num, p, (self.d + 2) as u32)
    }

    fn is_exceptional(&self, _point: &[i64]) -> bool {
        false
    }

    fn prime_support_bound(&self, point: &[i64]) -> Option<u128> {
        // every qualifying prime divides a_0 exactly once
        Some(point[0].unsigned_abs() as u128)
    }

    fn support_count_above(&self, point: &[i64], threshold: u64) -> Result<u128> {
        Ok(self.support_places(point)?.iter().filter(|&&p| p > threshold).count() as u128)
    }

    fn support_places(&self, point: &[i64]) -> Result<Vec<u64>> {
        if point[0] == 0 {
            return Ok(Vec::new());
        }
        Ok(distinct_prime_factors_u128(point[0].unsigned_abs() as u128)
            .expect("nonzero")
            .into_iter()
            .filter(|&p| self.contains(point, p))
            .collect())
    }

    fn tail_majorant_c(&self) -> f64 {
        // s_p = (p-1)^2 / p^(d+2) <= 1/p^d <= 1/p^2
        1.0
    }

    fn occupancy_majorant(&self, p: u64) -> Option<BigRational> {
        // |U_p ∩ box| <= (2H/p + 1)^d * 2H <= (3/2)^d p^-d (2H)^(d+1) for p < H
        let num = BigUint::from(3u32).pow(self.d as u32);
        let den = BigInt::from(2u32).pow(self.d as u32) * BigInt::from(BigUint::from(p).pow(self.d as u32));
        Some(BigRational::new(BigInt::from(num), den))
    }

    fn occupancy_majorant_name(&self) -> &'static str {
        "(3/2)^d p^-d"
    }

    fn mean_behavior(&self) -> MeanBehavior {
        MeanBehavior::ConvergesToSeries
    }
}

/// The shifted p-Eisenstein locus; ambient dimension `d + 1`.
pub struct ShiftedEisensteinSystem {
    d: usize,
}

/// Builds the degree-`d` shifted Eisenstein system; requires `d >= 3`.
pub fn shifted_eisenstein_system(d: usize) -> Result<ShiftedEisensteinSystem> {
    if d < 3 {
        return Err(Error::domain(format!(
            "shifted eisenstein system needs d >= 3 (the majorant series diverges below), got {d}"
        )));
    }
    Ok(ShiftedEisensteinSystem { d })
}

/// Exhaustive reference: try every shift `i` in `[0, p)`.
///
/// Cost `O(p d^2)`; only used for small `p` and as the oracle the fast
/// path is tested against.
pub(crate) fn is_shift_eisenstein_exhaustive(coeffs: &[i64], p: u64) -> bool {
    (0..p).any(|i| is_eisenstein_after_shift(coeffs, p, i))
}

/// Is `f(x + i)` p-Eisenstein? Works mod `p^2` throughout.
fn is_eisenstein_after_shift(coeffs: &[i64], p: u64, shift: u64) -> bool {
    let d = coeffs.len() - 1;
    let p2 = (p as u128) * (p as u128);
    // shifted coefficients mod p^2 by Ruffini-Horner
    let mut c: Vec<u128> =
        coeffs.iter().map(|&x| (x as i128).rem_euclid(p2 as i128) as u128).collect();
    let s = shift as u128 % p2;
    for k in 0..d {
        for j in (k..d).rev() {
            c[j] = (c[j] + s * c[j + 1]) % p2;
        }
    }
    if c[d] % p as u128 == 0 {
        return false;
    }
    if c[..d].iter().any(|&x| x % p as u128 != 0) {
        return false;
    }
    c[0] % p2 != 0
}

/// Polynomial arithmetic over `F_p` used by the fast membership path.
mod fp {
    pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, b, p);
            }
            b = mul_mod(b, b, p);
            e >>= 1;
        }
        acc
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    /// Product of two polynomials reduced mod the monic image of `g`.
    pub fn mulmod_poly(a: &[u64], b: &[u64], g_monic: &[u64], p: u64) -> Vec<u64> {
        let d = g_monic.len() - 1;
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        // reduce by the monic g
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (t, &gc) in g_monic[..d].iter().enumerate() {
                let idx = k - d + t;
                prod[idx] = (prod[idx] + p - mul_mod(c, gc, p)) % p;
            }
        }
        prod.truncate(d);
        prod
    }

    fn trim(v: &mut Vec<u64>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    /// Monic gcd of two polynomials over `F_p`; coprime inputs give `[1]`.
    pub fn gcd_poly(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        trim(&mut a);
        trim(&mut b);
        while !(b.len() == 1 && b[0] == 0) {
            // a mod b, cancelling exactly one leading term per pass
            let lead_inv = inv_mod(*b.last().unwrap(), p);
            while a.len() >= b.len() {
                let k = a.len() - b.len();
                let q = mul_mod(*a.last().unwrap(), lead_inv, p);
                if q != 0 {
                    for (t, &bc) in b.iter().enumerate() {
                        a[k + t] = (a[k + t] + p - mul_mod(q, bc, p)) % p;
                    }
                }
                debug_assert_eq!(*a.last().unwrap(), 0);
                a.pop();
                if a.is_empty() {
                    a.push(0);
                    break;
                }
            }
            trim(&mut a);
            std::mem::swap(&mut a, &mut b);
        }
        let li = inv_mod(*a.last().unwrap(), p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, li, p);
        }
        a
    }
}

/// Fast membership: find the unique shift candidate by root extraction.
///
/// `f mod p` must equal `lead * (x - i)^d` for the shift `i`, so `i` is the
/// only root of `f` in `F_p`. The candidate comes out of
/// `gcd(f, x^p - x mod f)`; a binomial comparison plus one valuation check
/// verifies it. Cost `O(d^2 log p)` against `O(p d^2)` for the shift loop.
pub(crate) fn is_shift_eisenstein_root_path(coeffs: &[i64], p: u64) -> bool {
    let d = coeffs.len() - 1;
    let g: Vec<u64> = coeffs.iter().map(|&x| (x as i128).rem_euclid(p as i128) as u64).collect();
    if g[d] == 0 {
        return false;
    }
    // monic image of g for reduction
    let li = fp::inv_mod(g[d], p);
    let g_monic: Vec<u64> = g.iter().map(|&c| fp::mul_mod(c, li, p)).collect();
    debug_assert!(d >= 2, "root path assumes degree >= 2");
    // w = x^p mod g_monic by binary exponentiation
    let mut w = vec![1u64];
    let mut base = vec![0u64, 1];
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            w = fp::mulmod_poly(&w, &base, &g_monic, p);
        }
        base = fp::mulmod_poly(&base, &base, &g_monic, p);
        e >>= 1;
    }
    // h = gcd(g, w - x)
    let mut wx = w;
    while wx.len() < 2 {
        wx.push(0);
    }
    wx[1] = (wx[1] + p - 1) % p;
    let h = fp::gcd_poly(g_monic.clone(), wx, p);
    if h.len() != 2 {
        return false;
    }
    let i = (p - h[0]) % p; // root of the monic linear h
    // verify g == lead * (x - i)^d by expanding the binomial mod p
    let mut pk = 1u64; // i^k accumulator
    let mut binom = 1u128;
    for k in 0..=d {
        // coefficient of x^(d-k): lead * C(d,k) * (-i)^k
        let mut expect = fp::mul_mod((binom % p as u128) as u64, pk, p);
        expect = fp::mul_mod(expect, g[d], p);
        if k % 2 == 1 {
            expect = (p - expect) % p;
        }
        if g[d - k] != expect {
            return false;
        }
        binom = binom * (d - k) as u128 / (k + 1) as u128;
        pk = fp::mul_mod(pk, i % p, p);
    }
    // v_p(f(i)) must be exactly 1
    let p2 = (p as u128) * (p as u128);
    let mut acc: u128 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * (i as u128) + (c as i128).rem_euclid(p2 as i128) as u128) % p2;
    }
    acc % p as u128 == 0 && acc != 0
}

/// Threshold between the exhaustive shift loop and the root path.
const SHIFT_LOOP_CUTOFF: u64 = 64;

pub(crate) fn is_shift_eisenstein(coeffs: &[i64], p: u64) -> bool {
    if p <= SHIFT_LOOP_CUTOFF {
        is_shift_eisenstein_exhaustive(coeffs, p)
    } else {
        is_shift_eisenstein_root_path(coeffs, p)
    }
}

impl ShiftedEisensteinSystem {
    /// `disc(f)` for the tuple, `None` when the tuple has a zero leading
    /// coefficient (no shift of it is ever Eisenstein).
    fn disc_of(&self, point: &[i64]) -> Option<BigInt> {
        if point[self.d] == 0 {
            return None;
        }
        let f = IntPolynomial::from_i64(point).expect("nonempty");
        Some(discriminant(&f).expect("degree and leading checked"))
    }
}

impl LocalSystem for ShiftedEisensteinSystem {
    fn key(&self) -> String {
        format!("shifted-eisenstein:d={}", self.d)
    }

    fn dimension(&self) -> usize {
        self.d + 1
    }

    fn contains(&self, point: &[i64], p: u64) -> bool {
        debug_assert_eq!(point.len(), self.dimension());
        is_shift_eisenstein(point, p)
    }

    fn local_measure(&self, p: u64) -> BigRational {
        // (p - 1)^2 / p^(d + 1): the p disjoint shift translates of the
        // plain Eisenstein locus
        let num = BigUint::from(p - 1) * BigUint::from(p - 1);
        ratio_over_prime_power(num, p, (self.d + 1) as u32)
    }

    fn is_exceptional(&self, _point: &[i64]) -> bool {
        false
    }

    fn prime_support_bound(&self, point: &[i64]) -> Option<u128> {
        // qualifying primes divide the discriminant, which shifts preserve
        match self.disc_of(point) {
            None => Some(0),
            Some(d) if d.is_zero() => Some(0), // not squarefree, never Eisenstein
            Some(d) => {
                let mag = u128::try_from(d.abs().magnitude().clone())
                    .expect("discriminant of an i64 tuple fits u128 at desk scale");
                Some(largest_prime_factor_u128(mag) as u128)
            }
        }
    }

    fn support_count_above(&self, point: &[i64], threshold: u64) -> Result<u128> {
        Ok(self.support_places(point)?.iter().filter(|&&p| p > threshold).count() as u128)
    }

    fn support_places(&self, point: &[i64]) -> Result<Vec<u64>> {
        let Some(disc) = self.disc_of(point) else {
            return Ok(Vec::new());
        };
        if disc.is_zero() {
            return Ok(Vec::new());
        }
        let mag = u128::try_from(disc.abs().magnitude().clone())
            .map_err(|_| Error::SupportUnrepresentable("discriminant beyond u128".into()))?;
        Ok(distinct_prime_factors_u128(mag)
            .expect("nonzero")
            .into_iter()
            .filter(|&p| self.contains(point, p))
            .collect())
    }

    fn tail_majorant_c(&self) -> f64 {
        // s_p = (p-1)^2 / p^(d+1) <= 1/p^(d-1) <= 1/p^2 for d >= 3
        1.0
    }

    fn occupancy_majorant(&self, p: u64) -> Option<BigRational> {
        // p shift classes times the plain Eisenstein occupancy
        let num = BigUint::from(3u32).pow(self.d as u32);
        let den =
            BigInt::from(2u32).pow(self.d as u32) * BigInt::from(BigUint::from(p).pow((self.d - 1) as u32));
        Some(BigRational::new(BigInt::from(num), den))
    }

    fn occupancy_majorant_name(&self) -> &'static str {
        "(3/2)^d p^-(d-1)"
    }

    fn mean_behavior(&self) -> MeanBehavior {
        MeanBehavior::ConvergesToSeries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn construction_bounds() {
        assert!(eisenstein_system(1).is_err());
        assert!(eisenstein_system(2).is_ok());
        assert!(shifted_eisenstein_system(2).is_err());
        assert!(shifted_eisenstein_system(3).is_ok());
    }

    #[test]
    fn eisenstein_measure_and_membership() {
        let e2 = eisenstein_system(2).unwrap();
        assert_eq!(e2.local_measure(2), rat(1, 16));
        assert!(e2.contains(&[2, 2, 1], 2));
        assert!(!e2.contains(&[4, 2, 1], 2)); // p^2 | a_0
        assert!(!e2.contains(&[2, 2, 2], 2)); // p | a_d
        assert!(!e2.contains(&[2, 1, 1], 2)); // p does not divide a_1
        assert!(!e2.contains(&[0, 2, 1], 2)); // a_0 = 0 means p^2 | a_0
    }

    #[test]
    fn eisenstein_support() {
        let e2 = eisenstein_system(2).unwrap();
        assert_eq!(e2.prime_support_bound(&[6, 6, 1]), Some(6));
        assert_eq!(e2.support_places(&[6, 6, 1]).unwrap(), vec![2, 3]);
        assert_eq!(e2.support_places(&[0, 2, 1]).unwrap(), Vec::<u64>::new());
        assert_eq!(e2.support_count_above(&[6, 6, 1], 2).unwrap(), 1);
        assert_eq!(e2.prime_support_bound(&[0, 5, 7]), Some(0));
    }

    #[test]
    fn shifted_measure_and_membership() {
        let s3 = shifted_eisenstein_system(3).unwrap();
        assert_eq!(s3.local_measure(2), rat(1, 16));
        // x^3 + 2 is 2-Eisenstein with shift 0
        assert!(s3.contains(&[2, 0, 0, 1], 2));
        // f(x) = (x - 1)^3 + 2 = x^3 - 3x^2 + 3x + 1 is 2-Eisenstein after shift 1
        assert!(s3.contains(&[1, 3, -3, 1], 2));
        // zero leading coefficient: never Eisenstein
        assert!(!s3.contains(&[2, 0, 0, 0], 2));
    }

    #[test]
    fn shift_invariance_of_membership() {
        let s3 = shifted_eisenstein_system(3).unwrap();
        let f = [2, 0, 0, 1i64];
        let shifted = {
            // f(x + 1)
            let p = IntPolynomial::from_i64(&f).unwrap();
            let g = crate::arith::taylor_shift(&p, &BigInt::from(1));
            let mut out = [0i64; 4];
            for (o, c) in out.iter_mut().zip(g.coeffs()) {
                *o = i64::try_from(c).unwrap();
            }
            out
        };
        for p in [2u64, 3, 5, 7, 11] {
            assert_eq!(s3.contains(&f, p), s3.contains(&shifted, p), "p={p}");
        }
    }

    #[test]
    fn root_path_agrees_with_exhaustive_loop() {
        // every prime here is exercised through both implementations
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 101, 103];
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 41) as i64 - 20
        };
        for _ in 0..400 {
            let f = [next(), next(), next(), next()];
            for &p in &primes {
                assert_eq!(
                    is_shift_eisenstein_exhaustive(&f, p),
                    is_shift_eisenstein_root_path(&f, p),
                    "f={f:?} p={p}"
                );
            }
        }
        // targeted positives for the root path
        assert!(is_shift_eisenstein_root_path(&[101, 0, 0, 1], 101));
        // f(x) = (x-5)^3 + 103 at p = 103, shifted by 5
        let base = IntPolynomial::from_i64(&[103, 0, 0, 1]).unwrap();
        let g = crate::arith::taylor_shift(&base, &BigInt::from(-5));
        let gi: Vec<i64> = g.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert!(is_shift_eisenstein_root_path(&gi, 103));
        assert!(!is_shift_eisenstein_root_path(&[1, 0, 0, 1], 101));
    }

    #[test]
    fn shifted_support_places() {
        let s3 = shifted_eisenstein_system(3).unwrap();
        // x^3 + 2: disc = -108 = -(2^2 27), places containing it: p = 2 (shift 0);
        // p = 3: f(x+i) mod 3 = x^3 + (i^3 + 2); needs i^3 + 2 = 0 mod 3, i = 1:
        // f(x+1) = x^3 + 3x^2 + 3x + 3, 3-Eisenstein
        assert_eq!(s3.support_places(&[2, 0, 0, 1]).unwrap(), vec![2, 3]);
        assert_eq!(s3.prime_support_bound(&[2, 0, 0, 1]), Some(3));
        // repeated-root tuple: disc = 0, no primes at all
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        assert_eq!(s3.prime_support_bound(&[2, -3, 0, 1]), Some(0));
        assert_eq!(s3.support_places(&[2, -3, 0, 1]).unwrap(), Vec::<u64>::new());
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert!(!s3.contains(&[2, -3, 0, 1], p));
        }
    }
}
