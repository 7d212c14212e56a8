//! Exact integer and rational polynomial arithmetic.
//!
//! Everything in the crate that talks about a polynomial (minimal polynomials,
//! companion polynomials, co-factors, engine states, cyclotomic factors) goes
//! through [`IntPoly`]. Root location is done exactly: Sturm chains over
//! [`RatPoly`] and Descartes sign counts, never floating point.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder")]
    Inexact,
    #[error("divisor must be monic and nonzero")]
    DivisorNotMonic,
    #[error("interval is empty: lo must be strictly below hi")]
    EmptyInterval,
    #[error("polynomial vanishes at an interval endpoint")]
    RootAtEndpoint,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial")]
    Zero,
}

/// Dense integer polynomial, coefficients in ascending degree order.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Small-coefficient view, if every coefficient fits an `i64`.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divmod_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        if !divisor.is_monic() {
            return Err(PolyError::DivisorNotMonic);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let t = std::mem::take(&mut rem[k + dd]);
            if t.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..dd].iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &t * dc;
                }
            }
            quot[k] = t;
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient `self / divisor`, failing when the remainder is nonzero.
    pub fn divexact(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        let (q, r) = self.divmod_monic(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::Inexact)
        }
    }

    /// True iff `x^deg P(1/x) = P(x)`, i.e. the coefficient list is a palindrome.
    /// Product of the distinct irreducible factors, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        let p = RatPoly::from(self);
        let g = p.gcd(&p.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return p.to_primitive();
        }
        p.div_rem(&g).0.to_primitive()
    }

    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Number of sign changes in the coefficient sequence (zeros skipped).
    pub fn descartes_sign_changes(&self) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for c in &self.coeffs {
            let s = sign_of(c);
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Exact discriminant, `(-1)^{d(d-1)/2} Res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> BigInt {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return BigInt::zero(),
        };
        let res = resultant(self, &self.derivative());
        let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
        signed / self.leading().expect("nonzero")
    }

    /// Ascending coefficients separated by single spaces.
    pub fn ascending_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn sign_of(c: &BigInt) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

/// Resultant via the Sylvester matrix and fraction-free (Bareiss) elimination.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let (m, n) = match (p.degree(), q.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigInt::zero(),
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for (k, c) in p.coeffs.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

fn bareiss_determinant(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut result = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic is defined for n >= 1");
    if let Some(p) = cyclotomic_cache().lock().expect("poisoned").get(&n) {
        return p.clone();
    }
    let mut r = &IntPoly::monomial(n as usize) - &IntPoly::one();
    for d in 1..n {
        if n % d == 0 {
            r = r.divexact(&cyclotomic(d)).expect("cyclotomic divides x^n - 1");
        }
    }
    cyclotomic_cache()
        .lock()
        .expect("poisoned")
        .insert(n, r.clone());
    r
}

/// Euler's totient, used to bound cyclotomic degrees.
pub fn totient(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Polynomial with exact rational coefficients, ascending order, canonical
/// (no trailing zero).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder of Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let t = &rem[top] / lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = &rem[idx] - &t * dc;
            }
            quot[top - dd] = t;
            rem.pop();
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => RatPoly::new(a.coeffs.iter().map(|c| c / &l).collect()),
            None => a,
        }
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn to_primitive(&self) -> IntPoly {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if self.leading().is_some_and(|l| l.is_negative()) { -1 } else { 1 };
        if g.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(ints.into_iter().map(|x| x / &g * sign).collect())
    }

    /// Remainder of Euclidean division by a nonzero divisor.
    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let top = rem.len() - 1;
            let t = &rem[top] / lead;
            if !t.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + j;
                    rem[idx] = &rem[idx] - &t * dc;
                }
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        RatPoly::new(rem)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        RatPoly::new(
            p.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::Zero);
        }
        let p0 = RatPoly::from(p);
        let p1 = p0.derivative();
        let mut chain = vec![p0];
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]).neg();
                if r.is_zero() {
                    break;
                }
                chain.push(r);
            }
        }
        if chain.last().and_then(RatPoly::degree).unwrap_or(0) > 0 {
            return Err(PolyError::NotSquarefree);
        }
        Ok(SturmChain { chain })
    }

    fn changes<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for s in signs {
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    pub fn sign_changes_at(&self, x: &BigRational) -> usize {
        Self::changes(self.chain.iter().map(|q| rat_sign(&q.eval(x))))
    }

    pub fn sign_changes_at_pos_inf(&self) -> usize {
        Self::changes(
            self.chain
                .iter()
                .map(|q| rat_sign(q.leading().expect("nonzero"))),
        )
    }

    pub fn sign_changes_at_neg_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|q| {
            let s = rat_sign(q.leading().expect("nonzero"));
            if q.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes_at(lo) - self.sign_changes_at(hi)
    }

    /// Roots in `(lo, +inf)`.
    pub fn count_above(&self, lo: &BigRational) -> usize {
        self.sign_changes_at(lo) - self.sign_changes_at_pos_inf()
    }

    /// Roots in `(-inf, hi]`.
    pub fn count_below(&self, hi: &BigRational) -> usize {
        self.sign_changes_at_neg_inf() - self.sign_changes_at(hi)
    }
}

pub(crate) fn rat_sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact number of real roots of a squarefree `p` in `(lo, hi]`.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize, PolyError> {
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    if p.eval_rational(lo).is_zero() || p.eval_rational(hi).is_zero() {
        return Err(PolyError::RootAtEndpoint);
    }
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// Cauchy bound: every root has modulus strictly below the returned integer.
pub fn cauchy_root_bound(p: &IntPoly) -> BigInt {
    let lead = p.leading().expect("nonzero").abs();
    let max = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    BigInt::one() + max.div_ceil(&lead) + BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn mul_examples() {
        let p = IntPoly::from_i64s(&[1, 1]);
        let q = IntPoly::from_i64s(&[-1, 1]);
        assert_eq!(&p * &q, IntPoly::from_i64s(&[-1, 0, 1]));
        let eq1 = IntPoly::from_i64s(&[1, -3, -1, -7, -1, -3, 1]);
        assert_eq!(&eq1 * &IntPoly::one(), eq1);
        assert_eq!(&eq1 * &IntPoly::zero(), IntPoly::zero());
    }

    #[test]
    fn divexact_examples() {
        let r = IntPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(
            r.divexact(&IntPoly::from_i64s(&[-1, 1])).unwrap(),
            IntPoly::from_i64s(&[1, 1])
        );
        assert_eq!(
            IntPoly::from_i64s(&[1, 0, 1]).divexact(&IntPoly::from_i64s(&[1, 1])),
            Err(PolyError::Inexact)
        );
        assert_eq!(
            r.divexact(&IntPoly::from_i64s(&[1, 2])),
            Err(PolyError::DivisorNotMonic)
        );
    }

    #[test]
    fn reciprocal_examples() {
        assert!(IntPoly::from_i64s(&[1, -3, -1, -7, -1, -3, 1]).is_reciprocal());
        assert!(IntPoly::from_i64s(&[1, 2, 2, 1]).is_reciprocal());
        assert!(!IntPoly::from_i64s(&[0, 1, 1]).is_reciprocal());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic(105).degree(), Some(48));
        // Φ_105 is the first with a coefficient of magnitude 2
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn cyclotomic_second_coefficient_is_minus_mobius() {
        for n in 1..=100u64 {
            let phi = cyclotomic(n);
            let d = phi.degree().unwrap();
            assert_eq!(phi.degree().unwrap() as u64, totient(n));
            assert_eq!(phi.coeff(d - 1), BigInt::from(-mobius(n)), "n = {n}");
            let xn1 = &IntPoly::monomial(n as usize) - &IntPoly::one();
            assert!(xn1.divexact(&phi).is_ok());
            if n >= 2 {
                assert!(phi.is_reciprocal(), "n = {n}");
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(IntPoly::from_i64s(&[-1, 0, 1]).discriminant(), BigInt::from(4));
        assert_eq!(IntPoly::from_i64s(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        // x^3 + px + q: -4p^3 - 27q^2
        assert_eq!(
            IntPoly::from_i64s(&[1, -1, 0, 1]).discriminant(),
            BigInt::from(4 - 27)
        );
        let p = IntPoly::from_i64s(&[1, -9, -37, -55, -37, -9, 1]);
        assert_eq!(p.discriminant(), BigInt::from(140_682_625));
    }

    #[test]
    fn discriminant_vanishes_on_repeated_roots() {
        let base = IntPoly::from_i64s(&[-2, 1]);
        for other in [[3i64, 1], [-5, 1], [7, 2]] {
            let sq = &(&base * &base) * &IntPoly::from_i64s(&other);
            assert!(sq.discriminant().is_zero());
            let sf = &base * &IntPoly::from_i64s(&other);
            assert!(!sf.discriminant().is_zero());
        }
    }

    #[test]
    fn descartes_examples() {
        assert_eq!(IntPoly::from_i64s(&[1, 2, 1]).descartes_sign_changes(), 0);
        assert_eq!(IntPoly::from_i64s(&[1, -1, 1]).descartes_sign_changes(), 2);
        // x^8 - 5x^7 - 0x^6 - 3x^5 - ... - (c7+1)x + 2
        let r = IntPoly::from_i64s(&[2, -4, 0, -1, -2, 0, -3, 0, -5, 1]);
        assert_eq!(r.descartes_sign_changes(), 2);
    }

    #[test]
    fn squarefree_part_examples() {
        let p = IntPoly::from_i64s(&[1, 2, 1]);
        assert_eq!(p.squarefree_part(), IntPoly::from_i64s(&[1, 1]));
        let p = &IntPoly::from_i64s(&[-1, 1]) * &IntPoly::from_i64s(&[1, 0, 1]);
        let p2 = &(&p * &p) * &IntPoly::from_i64s(&[2, 1]);
        assert_eq!(p2.squarefree_part(), &p * &IntPoly::from_i64s(&[2, 1]));
        assert_eq!(IntPoly::from_i64s(&[-4, 2]).squarefree_part(), IntPoly::from_i64s(&[-2, 1]));
    }

    #[test]
    fn sturm_examples() {
        let p = IntPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &rat(0, 1), &rat(2, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &rat(-2, 1), &rat(2, 1)).unwrap(), 2);
        let u = IntPoly::from_i64s(&[1, -3, -1, 1]);
        assert_eq!(sturm_count(&u, &rat(-2, 1), &rat(2, 1)).unwrap(), 2);
        assert_eq!(
            sturm_count(&p, &rat(2, 1), &rat(0, 1)),
            Err(PolyError::EmptyInterval)
        );
        let q = IntPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(
            sturm_count(&q, &rat(1, 1), &rat(3, 1)),
            Err(PolyError::RootAtEndpoint)
        );
        let sq = IntPoly::from_i64s(&[1, 2, 1]);
        assert_eq!(
            sturm_count(&sq, &rat(0, 1), &rat(3, 1)),
            Err(PolyError::NotSquarefree)
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(IntPoly::from_i64s(&[1, -1, 1]).to_string(), "x^2 - x + 1");
        assert_eq!(IntPoly::from_i64s(&[1]).to_string(), "1");
        assert_eq!(IntPoly::from_i64s(&[0, -2, 0, 1]).to_string(), "x^3 - 2x");
        assert_eq!(IntPoly::from_i64s(&[1, 2, 1]).ascending_string(), "1 2 1");
    }
}
