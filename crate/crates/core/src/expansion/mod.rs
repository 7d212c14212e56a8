//! Greedy beta-expansions of 1: the digit engine, period detection,
//! checkpoints and the passage between digits and companion polynomials.

pub mod checkpoint;
pub mod detect;
pub mod engine;
pub mod verify;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intpoly::IntPoly;

pub use detect::{
    detect_period, detect_preperiod, exact_shape, expand, materialize_digits, ExpandConfig, ExpandOutcome, Expander,
    LowerBoundReport, ParryShape,
};
pub use engine::{step, EngineError, EngineState, Record, StateVec};
pub use verify::{verify_expansion, CofactorCertificate, VerifyError};

/// An eventually periodic expansion `c_1 ... c_m (c_{m+1} ... c_{m+p})^inf`.
///
/// `p == 0` means the expansion is finite with `m` digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub m: usize,
    pub p: usize,
    pub digits: Vec<u64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompanionError {
    #[error("expected a monic polynomial of degree {expected}")]
    Shape { expected: usize },
    #[error("digit {index} would be negative or too large")]
    BadDigit { index: usize },
    #[error("finite expansion must end in a nonzero digit")]
    TrailingZero,
}

impl Expansion {
    pub fn new(m: usize, p: usize, digits: Vec<u64>) -> Self {
        assert_eq!(digits.len(), m + p, "digit count must be m + p");
        Expansion { m, p, digits }
    }

    pub fn is_finite(&self) -> bool {
        self.p == 0
    }

    /// Symbol at 0-based position `j` of the infinite sequence.
    pub fn symbol(&self, j: usize) -> u64 {
        if j < self.digits.len() {
            self.digits[j]
        } else if self.p == 0 {
            0
        } else {
            self.digits[self.m + (j - self.m) % self.p]
        }
    }

    pub fn preperiod_digits(&self) -> &[u64] {
        &self.digits[..self.m]
    }

    pub fn period_digits(&self) -> &[u64] {
        &self.digits[self.m..]
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |d: &[u64]| d.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(self.preperiod_digits()))?;
        if self.p > 0 {
            write!(f, "({})^inf", join(self.period_digits()))?;
        }
        Ok(())
    }
}

/// `x^k - c_1 x^{k-1} - ... - c_k` from the first `k` digits.
pub fn partial_poly(digits: &[u64]) -> IntPoly {
    let k = digits.len();
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::one();
    for (i, &c) in digits.iter().enumerate() {
        coeffs[k - 1 - i] = -BigInt::from(c);
    }
    IntPoly::new(coeffs)
}

/// The companion polynomial `R = P_{m+p} - P_m` (or `P_m` when finite).
pub fn digits_to_companion(e: &Expansion) -> IntPoly {
    let full = partial_poly(&e.digits);
    if e.p == 0 {
        full
    } else {
        &full - &partial_poly(&e.digits[..e.m])
    }
}

/// Inverse of [`digits_to_companion`] for a known shape.
pub fn companion_to_digits(r: &IntPoly, m: usize, p: usize) -> Result<Expansion, CompanionError> {
    let n = m + p;
    if r.degree() != Some(n) || !r.is_monic() {
        return Err(CompanionError::Shape { expected: n });
    }
    // c[0] plays the role of the leading -1 of P_m
    let mut c: Vec<BigInt> = vec![-BigInt::one(); n + 1];
    for i in 1..=n {
        let e = n - i;
        let coeff = -r.coeff(e);
        c[i] = if p > 0 && e <= m {
            // coefficient of x^e is -c_{m+p-e} + c_{m-e}
            &c[i - p] + coeff
        } else {
            coeff
        };
    }
    let mut digits = Vec::with_capacity(n);
    for (i, v) in c.iter().enumerate().skip(1) {
        match v.to_u64() {
            Some(d) if !v.is_negative() => digits.push(d),
            _ => return Err(CompanionError::BadDigit { index: i }),
        }
    }
    if p == 0 && digits.last() == Some(&0) {
        return Err(CompanionError::TrailingZero);
    }
    Ok(Expansion::new(m, p, digits))
}

/// Parry's lexicographic condition: every proper tail of the digit sequence is
/// strictly smaller than the sequence itself.
pub fn parry_check(e: &Expansion) -> bool {
    let n = e.m + e.p;
    if n == 0 {
        return false;
    }
    let window = e.m + 2 * e.p.max(1);
    // k = n matters only for a purely periodic sequence
    for k in 1..=n {
        let mut decided = false;
        for j in 0..window {
            let (a, b) = (e.symbol(k + j), e.symbol(j));
            if a != b {
                if a > b {
                    return false;
                }
                decided = true;
                break;
            }
        }
        if !decided {
            // a tail equal to the whole sequence
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_roundtrip_small() {
        let e = Expansion::new(1, 3, vec![3, 1, 0, 2]);
        let r = digits_to_companion(&e);
        // x^4 - 3x^3 - x^2 - 0x - 2 - (x - 3)
        assert_eq!(r, IntPoly::from_i64s(&[1, -1, -1, -3, 1]));
        assert_eq!(companion_to_digits(&r, 1, 3).unwrap(), e);
    }

    #[test]
    fn finite_companion() {
        let e = Expansion::new(2, 0, vec![1, 1]);
        assert_eq!(digits_to_companion(&e), IntPoly::from_i64s(&[-1, -1, 1]));
        assert_eq!(
            companion_to_digits(&IntPoly::from_i64s(&[0, -1, 1]), 2, 0),
            Err(CompanionError::TrailingZero)
        );
    }

    #[test]
    fn companion_rejects_negative_digits() {
        let r = IntPoly::from_i64s(&[0, 0, 1, 1]);
        assert!(matches!(
            companion_to_digits(&r, 1, 2),
            Err(CompanionError::BadDigit { .. })
        ));
    }

    #[test]
    fn parry_examples() {
        assert!(parry_check(&Expansion::new(1, 1, vec![1, 0])));
        assert!(parry_check(&Expansion::new(2, 0, vec![1, 1])));
        // 1(1)^inf has a tail equal to itself
        assert!(!parry_check(&Expansion::new(1, 1, vec![1, 1])));
        assert!(!parry_check(&Expansion::new(1, 2, vec![1, 0, 2])));
        assert!(parry_check(&Expansion::new(1, 3, vec![3, 1, 0, 2])));
        // a purely periodic sequence repeats itself after one period
        assert!(!parry_check(&Expansion::new(0, 2, vec![1, 0])));
    }

    #[test]
    fn display_format() {
        assert_eq!(Expansion::new(1, 2, vec![3, 0, 1]).to_string(), "3(0,1)^inf");
        assert_eq!(Expansion::new(2, 0, vec![1, 1]).to_string(), "1,1");
    }
}
