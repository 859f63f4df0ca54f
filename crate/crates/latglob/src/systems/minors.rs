//! Rank-deficient rectangular matrices: `U_p` is the set of `n x m`
//! matrices over `Z_p` (`n < m`) whose `n`-minors are all divisible by `p`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{
    self, distinct_prime_factors_u128, largest_prime_factor_u128, IntMatrix,
};
use crate::{Error, Result};

use super::{ratio_over_prime_power, LocalSystem, MeanBehavior};

/// The system of rank-deficient `n x m` integer matrices, `n < m`.
///
/// Points are flat vectors of length `n*m`, reshaped row-major. A point
/// lies in `U_p` exactly when its rank mod `p` drops below `n`,
/// equivalently when `p` divides the gcd of all maximal minors. The
/// exceptional set is the rational rank-deficient locus (minor gcd zero).
pub struct MinorsSystem {
    n: usize,
    m: usize,
}

/// Builds the `n x m` minors system; requires `n < m`.
pub fn minors_system(n: usize, m: usize) -> Result<MinorsSystem> {
    if n == 0 || m == 0 {
        return Err(Error::domain("matrix dimensions must be positive"));
    }
    if n >= m {
        return Err(Error::domain(format!("minors system needs n < m, got n={n}, m={m}")));
    }
    Ok(MinorsSystem { n, m })
}

impl MinorsSystem {
    /// Gcd of all `n`-minors of the point, as `u128`.
    ///
    /// Computes determinants in checked `i128` and falls back to exact
    /// big-integer arithmetic when an intermediate would overflow, so the
    /// result is exact for every `i64` point.
    pub(crate) fn minor_gcd(&self, point: &[i64]) -> u128 {
        debug_assert_eq!(point.len(), self.n * self.m);
        let mut g: u128 = 0;
        for cols in arith::column_subsets(self.m, self.n) {
            let det = match self.minor_det_i128(point, &cols) {
                Some(d) => d.unsigned_abs(),
                None => return self.minor_gcd_big(point),
            };
            g = gcd_u128(g, det);
            if g == 1 {
                return 1;
            }
        }
        g
    }

    fn minor_det_i128(&self, point: &[i64], cols: &[usize]) -> Option<i128> {
        let n = self.n;
        let at = |r: usize, c: usize| point[r * self.m + cols[c]] as i128;
        match n {
            1 => Some(at(0, 0)),
            2 => at(0, 0)
                .checked_mul(at(1, 1))?
                .checked_sub(at(0, 1).checked_mul(at(1, 0))?),
            3 => {
                let m00 = at(1, 1).checked_mul(at(2, 2))?.checked_sub(at(1, 2).checked_mul(at(2, 1))?)?;
                let m01 = at(1, 0).checked_mul(at(2, 2))?.checked_sub(at(1, 2).checked_mul(at(2, 0))?)?;
                let m02 = at(1, 0).checked_mul(at(2, 1))?.checked_sub(at(1, 1).checked_mul(at(2, 0))?)?;
                at(0, 0)
                    .checked_mul(m00)?
                    .checked_sub(at(0, 1).checked_mul(m01)?)?
                    .checked_add(at(0, 2).checked_mul(m02)?)
            }
            _ => det_bareiss_i128(n, &mut (0..n * n).map(|i| at(i / n, i % n)).collect::<Vec<_>>()),
        }
    }

    fn minor_gcd_big(&self, point: &[i64]) -> u128 {
        let m = IntMatrix::from_i64(self.n, self.m, point).expect("dimensions fixed");
        let g = arith::n_minor_gcd(&m);
        u128::try_from(g).expect("minor gcd of an i64 point fits u128")
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free elimination over checked `i128`; `None` on overflow.
fn det_bareiss_i128(n: usize, m: &mut [i128]) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                return Some(0);
            };
            for c in 0..n {
                m.swap(swap * n + c, k * n + c);
            }
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = m[r * n + c]
                    .checked_mul(m[k * n + k])?
                    .checked_sub(m[r * n + k].checked_mul(m[k * n + c])?)?
                    / prev;
                m[r * n + c] = v;
            }
            m[r * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    Some(sign * m[(n - 1) * n + (n - 1)])
}

impl LocalSystem for MinorsSystem {
    fn key(&self) -> String {
        format!("minors:n={},m={}", self.n, self.m)
    }

    fn dimension(&self) -> usize {
        self.n * self.m
    }

    fn contains(&self, point: &[i64], p: u64) -> bool {
        debug_assert_eq!(point.len(), self.dimension());
        let pm = p as i128;
        let reduced: Vec<u64> =
            point.iter().map(|&e| (e as i128).rem_euclid(pm) as u64).collect();
        arith::rank_mod_p_u64(self.n, self.m, &reduced, p) < self.n
    }

    fn local_measure(&self, p: u64) -> BigRational {
        // 1 - prod_{i=0}^{n-1} (1 - p^-(m-i))
        let mut prod = BigRational::one();
        for i in 0..self.n {
            let k = (self.m - i) as u32;
            let term = BigRational::one() - ratio_over_prime_power(BigUint::one(), p, k);
            prod *= term;
        }
        BigRational::one() - prod
    }

    fn is_exceptional(&self, point: &[i64]) -> bool {
        self.minor_gcd(point) == 0
    }

    fn prime_support_bound(&self, point: &[i64]) -> Option<u128> {
        match self.minor_gcd(point) {
            0 => None, // exceptional: infinite support
            g => Some(largest_prime_factor_u128(g) as u128),
        }
    }

    fn support_count_above(&self, point: &[i64], threshold: u64) -> Result<u128> {
        match self.minor_gcd(point) {
            0 => Err(Error::Integrity(
                "support count requested for an exceptional point".into(),
            )),
            g => Ok(distinct_prime_factors_u128(g)
                .expect("g > 0")
                .into_iter()
                .filter(|&p| p > threshold)
                .count() as u128),
        }
    }

    fn support_places(&self, point: &[i64]) -> Result<Vec<u64>> {
        match self.minor_gcd(point) {
            0 => Err(Error::Integrity(
                "support places requested for an exceptional point".into(),
            )),
            g => Ok(distinct_prime_factors_u128(g).expect("g > 0")),
        }
    }

    fn tail_majorant_c(&self) -> f64 {
        // s_p <= n * p^-(m-n+1) <= n / p^2 since m > n
        self.n as f64
    }

    fn occupancy_majorant(&self, p: u64) -> Option<BigRational> {
        // v_p = 6^(nm) / p^2
        let c = BigUint::from(6u32).pow((self.n * self.m) as u32);
        Some(ratio_over_prime_power(c, p, 2))
    }

    fn occupancy_majorant_name(&self) -> &'static str {
        "6^(nm) p^-2"
    }

    fn mean_behavior(&self) -> MeanBehavior {
        MeanBehavior::ConvergesToSeries
    }
}
