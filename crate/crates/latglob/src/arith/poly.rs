//! Integer polynomials in tuple form, Taylor shifts and discriminants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

use super::matrix::det_bareiss;

/// A univariate integer polynomial stored as the coefficient tuple
/// `(a_0, .., a_d)`, constant term first.
///
/// The tuple length is part of the value: trailing zero coefficients are
/// kept, so a degree-`d` slot whose top coefficient happens to be zero is
/// representable. [`IntPolynomial::normalized_degree`] reports the actual
/// degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds from `(a_0, .., a_d)`; the tuple must be nonempty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<IntPolynomial> {
        if coeffs.is_empty() {
            return Err(Error::domain("polynomial needs at least one coefficient"));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<IntPolynomial> {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(a_0, .., a_d)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The tuple slot degree `d` (length minus one).
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree after dropping trailing zeros; `None` for the zero polynomial.
    pub fn normalized_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Coefficient of the tuple slot `x^d`.
    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty by construction")
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative, one slot shorter (constants map to the zero tuple).
    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() == 1 {
            return IntPolynomial { coeffs: vec![BigInt::zero()] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolynomial { coeffs }
    }
}

/// Coefficients of `f(x + i)`, exactly, preserving the tuple length.
pub fn taylor_shift(f: &IntPolynomial, i: &BigInt) -> IntPolynomial {
    let mut c = f.coeffs.clone();
    let d = c.len() - 1;
    // Ruffini-Horner: repeated synthetic division by (x - (-i))
    for k in 0..d {
        for j in (k..d).rev() {
            let add = i * &c[j + 1];
            c[j] += add;
        }
    }
    IntPolynomial { coeffs: c }
}

/// Resultant of `f` and `g` as the Sylvester determinant.
///
/// Both arguments are taken at their normalized degree; errors if either is
/// the zero polynomial.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    let df = f.normalized_degree().ok_or_else(|| Error::domain("resultant of zero polynomial"))?;
    let dg = g.normalized_degree().ok_or_else(|| Error::domain("resultant of zero polynomial"))?;
    if df == 0 {
        return Ok(f.coeffs[0].pow(dg as u32));
    }
    if dg == 0 {
        let sign = if (df * dg) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        return Ok(sign * g.coeffs[0].pow(df as u32));
    }
    let n = df + dg;
    let mut m = vec![BigInt::zero(); n * n];
    // dg rows of f's coefficients (descending), then df rows of g's
    for r in 0..dg {
        for (k, c) in f.coeffs[..=df].iter().rev().enumerate() {
            m[r * n + r + k] = c.clone();
        }
    }
    for r in 0..df {
        for (k, c) in g.coeffs[..=dg].iter().rev().enumerate() {
            m[(dg + r) * n + r + k] = c.clone();
        }
    }
    Ok(det_bareiss(n, m))
}

/// Exact integer discriminant.
///
/// Convention, fixed here: `disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / a_d`
/// where `d` is the tuple degree and `a_d` the leading coefficient.
/// Requires `d >= 1` and `a_d != 0`.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let d = f.degree_bound();
    if d == 0 {
        return Err(Error::domain("discriminant needs degree >= 1"));
    }
    if f.leading().is_zero() {
        return Err(Error::domain("discriminant needs a nonzero leading coefficient"));
    }
    let res = resultant(f, &f.derivative())?;
    let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
    Ok(signed / f.leading())
}

/// A multivariate integer polynomial as a list of terms
/// `coeff * x_1^e1 * .. * x_d^ed`.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    vars: usize,
    terms: Vec<(BigInt, Vec<u32>)>,
}

impl MultiPoly {
    pub fn new(vars: usize, terms: Vec<(BigInt, Vec<u32>)>) -> Result<MultiPoly> {
        if terms.iter().any(|(_, e)| e.len() != vars) {
            return Err(Error::domain("every exponent vector must have one entry per variable"));
        }
        Ok(MultiPoly { vars, terms })
    }

    /// The coordinate polynomial `x_k` (0-based) in `vars` variables.
    pub fn coordinate(vars: usize, k: usize) -> MultiPoly {
        let mut e = vec![0u32; vars];
        e[k] = 1;
        MultiPoly { vars, terms: vec![(BigInt::one(), e)] }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn eval(&self, point: &[i64]) -> BigInt {
        debug_assert_eq!(point.len(), self.vars);
        let mut acc = BigInt::zero();
        for (c, exps) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    t *= BigInt::from(*x).pow(e);
                }
            }
            acc += t;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c).unwrap()
    }

    #[test]
    fn taylor_shift_examples() {
        // x^2 shifted by 1 -> x^2 + 2x + 1
        assert_eq!(taylor_shift(&poly(&[0, 0, 1]), &BigInt::from(1)), poly(&[1, 2, 1]));
        let f = poly(&[3, -2, 0, 5]);
        assert_eq!(taylor_shift(&f, &BigInt::zero()), f);
    }

    #[test]
    fn taylor_shift_round_trip_and_action() {
        // randomized small cases: shift by i then -i is the identity,
        // and shift by i then j equals shift by i + j
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 21) as i64 - 10
        };
        for _ in 0..200 {
            let f = poly(&[next(), next(), next(), next(), next()]);
            let i = BigInt::from(next());
            let j = BigInt::from(next());
            assert_eq!(taylor_shift(&taylor_shift(&f, &i), &(-i.clone())), f);
            assert_eq!(
                taylor_shift(&taylor_shift(&f, &i), &j),
                taylor_shift(&f, &(i + j))
            );
        }
    }

    #[test]
    fn discriminant_quadratic_formula() {
        for b in -6i64..=6 {
            for c in -6i64..=6 {
                let f = poly(&[c, b, 1]);
                assert_eq!(discriminant(&f).unwrap(), BigInt::from(b * b - 4 * c));
            }
        }
    }

    /// Oracle: the 5x5 Sylvester determinant of (x^3 + px + q, 3x^2 + p)
    /// expanded by hand-written cofactors, independent of `det_bareiss`.
    fn cubic_resultant_oracle(p: i64, q: i64) -> i64 {
        let rows: [[i64; 5]; 5] = [
            [1, 0, p, q, 0],
            [0, 1, 0, p, q],
            [3, 0, p, 0, 0],
            [0, 3, 0, p, 0],
            [0, 0, 3, 0, p],
        ];
        fn det(m: Vec<Vec<i64>>) -> i64 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            let mut acc = 0;
            for c in 0..n {
                if m[0][c] == 0 {
                    continue;
                }
                let sub: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, &v)| v).collect()
                    })
                    .collect();
                let t = m[0][c] * det(sub);
                acc += if c % 2 == 0 { t } else { -t };
            }
            acc
        }
        det(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn discriminant_depressed_cubic() {
        for p in -5i64..=5 {
            for q in -5i64..=5 {
                let f = poly(&[q, p, 0, 1]);
                let expect = -(cubic_resultant_oracle(p, q));
                assert_eq!(discriminant(&f).unwrap(), BigInt::from(expect));
                assert_eq!(expect, -4 * p * p * p - 27 * q * q);
            }
        }
    }

    #[test]
    fn discriminant_repeated_root_is_zero() {
        // (x - 1)^2 = x^2 - 2x + 1
        assert_eq!(discriminant(&poly(&[1, -2, 1])).unwrap(), BigInt::zero());
        // (x - 2)^2 (x + 1) = x^3 - 3x^2 + 4
        assert_eq!(discriminant(&poly(&[4, 0, -3, 1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn discriminant_domain_errors() {
        assert!(discriminant(&poly(&[5])).is_err());
        assert!(discriminant(&poly(&[1, 2, 0])).is_err());
    }

    /// disc(f) = 0 exactly when gcd(f, f') has positive degree; the gcd side
    /// is decided by a test-local subresultant-free Euclid over rationals.
    #[test]
    fn discriminant_vanishes_iff_repeated_factor() {
        fn rational_gcd_degree(f: &IntPolynomial) -> usize {
            let trim = |mut v: Vec<BigInt>| -> Vec<BigInt> {
                while v.len() > 1 && v.last().unwrap().is_zero() {
                    v.pop();
                }
                v
            };
            // division-free pseudo-remainder Euclid: r <- lc(b)*r - lead(r)*x^k*b
            let mut a = trim(f.coeffs().to_vec());
            let mut b = trim(f.derivative().coeffs().to_vec());
            loop {
                if b.len() == 1 {
                    return if b[0].is_zero() { a.len() - 1 } else { 0 };
                }
                let lc = b.last().unwrap().clone();
                let mut r = a;
                while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
                    let k = r.len() - b.len();
                    let lead = r.last().unwrap().clone();
                    let mut nr: Vec<BigInt> = r.iter().map(|c| c * &lc).collect();
                    for (i, bc) in b.iter().enumerate() {
                        let sub = &lead * bc;
                        nr[k + i] -= sub;
                    }
                    debug_assert!(nr.last().unwrap().is_zero());
                    nr.pop();
                    r = trim(nr);
                }
                a = b;
                b = r;
            }
        }
        for a0 in -4i64..=4 {
            for a1 in -4i64..=4 {
                for a2 in -4i64..=4 {
                    let f = poly(&[a0, a1, a2, 1]);
                    let disc_zero = discriminant(&f).unwrap().is_zero();
                    let gcd_pos = rational_gcd_degree(&f) > 0;
                    assert_eq!(disc_zero, gcd_pos, "f = {:?}", f.coeffs());
                }
            }
        }
    }

    #[test]
    fn multipoly_eval() {
        // x1^2 * x2 - 3
        let p = MultiPoly::new(
            2,
            vec![(BigInt::from(1), vec![2, 1]), (BigInt::from(-3), vec![0, 0])],
        )
        .unwrap();
        assert_eq!(p.eval(&[2, 5]), BigInt::from(17));
        assert_eq!(MultiPoly::coordinate(3, 1).eval(&[4, -7, 9]), BigInt::from(-7));
        assert!(MultiPoly::new(2, vec![(BigInt::one(), vec![1])]).is_err());
    }
}
