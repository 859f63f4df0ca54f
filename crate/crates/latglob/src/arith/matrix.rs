//! Integer matrices: rank over prime fields and the gcd of maximal minors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::{Error, Result};

use super::primes::is_prime_u64;

/// An `n x m` integer matrix with `n <= m`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<IntMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("matrix dimensions must be positive"));
        }
        if rows > cols {
            return Err(Error::domain(format!("expected rows <= cols, got {rows} x {cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::domain(format!(
                "entry count {} does not match {rows} x {cols}",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<IntMatrix> {
        IntMatrix::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

/// Rank of `a` over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let pb = BigInt::from(p);
    let reduced: Vec<u64> = a
        .entries
        .iter()
        .map(|e| {
            let r = e.mod_floor(&pb);
            u64::try_from(r).expect("residue below p fits u64")
        })
        .collect();
    Ok(rank_mod_p_u64(a.rows, a.cols, &reduced, p))
}

/// Gaussian elimination over `F_p` on residues already reduced into `[0, p)`.
pub(crate) fn rank_mod_p_u64(rows: usize, cols: usize, entries: &[u64], p: u64) -> usize {
    let mut m = entries.to_vec();
    let mut rank = 0usize;
    let mulp = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] % p != 0) else {
            continue;
        };
        for c in 0..cols {
            m.swap(pivot * cols + c, rank * cols + c);
        }
        let inv = pow_mod_u64(m[rank * cols + col], p - 2, p);
        for r in rank + 1..rows {
            let factor = mulp(m[r * cols + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                let sub = mulp(factor, m[rank * cols + c]);
                m[r * cols + c] = (m[r * cols + c] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Gcd of all `n x n` minors of an `n x m` matrix.
///
/// Returns 0 exactly when every maximal minor vanishes, i.e. the rational
/// rank is below `n`. Convention: `gcd(0, k) = |k|`.
pub fn n_minor_gcd(a: &IntMatrix) -> BigUint {
    let n = a.rows;
    let mut g = BigUint::zero();
    let one = BigUint::from(1u32);
    for cols in column_subsets(a.cols, n) {
        let minor = minor_det(a, &cols);
        g = g.gcd(minor.magnitude());
        if g == one {
            break;
        }
    }
    g
}

fn minor_det(a: &IntMatrix, cols: &[usize]) -> BigInt {
    let n = a.rows;
    let mut sub = Vec::with_capacity(n * n);
    for r in 0..n {
        for &c in cols {
            sub.push(a.entry(r, c).clone());
        }
    }
    det_bareiss(n, sub)
}

/// Lexicographic `k`-subsets of `{0, .., m-1}`.
pub(crate) fn column_subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut done = k > m;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if cur[i] + 1 <= m - (k - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub(crate) fn det_bareiss(n: usize, mut m: Vec<BigInt>) -> BigInt {
    debug_assert_eq!(m.len(), n * n);
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(swap * n + c, k * n + c);
            }
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = (&m[r * n + c] * &m[k * n + k] - &m[r * n + k] * &m[k * n + c]) / &prev;
                m[r * n + c] = v;
            }
            m[r * n + k] = BigInt::zero();
        }
        prev = m[k * n + k].clone();
    }
    let d = m[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e).unwrap()
    }

    /// Oracle determinant by cofactor expansion.
    fn det_naive(n: usize, m: &[i64]) -> i64 {
        if n == 1 {
            return m[0];
        }
        let mut acc = 0i64;
        for c in 0..n {
            let mut sub = Vec::new();
            for r in 1..n {
                for cc in 0..n {
                    if cc != c {
                        sub.push(m[r * n + cc]);
                    }
                }
            }
            let term = m[c] * det_naive(n - 1, &sub);
            acc += if c % 2 == 0 { term } else { -term };
        }
        acc
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(&mat(2, 2, &[1, 0, 0, 1]), 3).unwrap(), 2);
        assert_eq!(rank_mod_p(&mat(2, 2, &[2, 4, 6, 8]), 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&mat(2, 3, &[1, 2, 3, 4, 5, 6]), 3).unwrap(), 1);
        assert!(rank_mod_p(&mat(2, 2, &[1, 0, 0, 1]), 4).is_err());
    }

    #[test]
    fn rank_handles_negative_entries() {
        assert_eq!(rank_mod_p(&mat(2, 2, &[-1, 0, 0, -1]), 5).unwrap(), 2);
        assert_eq!(rank_mod_p(&mat(1, 2, &[-5, 10]), 5).unwrap(), 0);
    }

    #[test]
    fn minor_gcd_examples() {
        assert_eq!(n_minor_gcd(&mat(1, 2, &[4, 6])), BigUint::from(2u32));
        assert_eq!(n_minor_gcd(&mat(2, 3, &[1, 2, 3, 4, 5, 6])), BigUint::from(3u32));
        assert_eq!(n_minor_gcd(&mat(2, 2, &[1, 2, 2, 4])), BigUint::zero());
        assert_eq!(n_minor_gcd(&mat(1, 2, &[0, 0])), BigUint::zero());
        assert_eq!(n_minor_gcd(&mat(1, 3, &[0, -7, 0])), BigUint::from(7u32));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let cases: &[(usize, &[i64])] = &[
            (2, &[3, -1, 4, 1]),
            (3, &[2, 0, 1, -3, 4, 5, 1, 1, 1]),
            (3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]),
            (4, &[1, 0, 2, -1, 3, 0, 0, 5, 2, 1, 4, -3, 1, 0, 5, 0]),
        ];
        for &(n, m) in cases {
            let big: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
            assert_eq!(det_bareiss(n, big), BigInt::from(det_naive(n, m)));
        }
    }

    #[test]
    fn column_subset_enumeration() {
        let subs: Vec<Vec<usize>> = column_subsets(4, 2).collect();
        assert_eq!(subs, vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3]
        ]);
        assert_eq!(column_subsets(3, 3).count(), 1);
    }

    #[test]
    fn dimension_validation() {
        assert!(IntMatrix::from_i64(0, 2, &[]).is_err());
        assert!(IntMatrix::from_i64(3, 2, &[0; 6]).is_err());
        assert!(IntMatrix::from_i64(2, 2, &[0; 3]).is_err());
    }
}
