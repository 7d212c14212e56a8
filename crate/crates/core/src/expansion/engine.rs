//! Greedy digit generation on reduced states `B_n(x) mod P(x)`.
//!
//! `B_0 = 1`, `c_n = floor(beta * B_{n-1}(beta))`, `B_n = x B_{n-1} - c_n mod P`.
//! The state is an exact integer vector; only the floor is approximate, and
//! it is certified by evaluating `beta * B(beta)` on both ends of a rational
//! enclosure of `beta` in fixed point. When the two ends disagree on the floor
//! the step fails with [`EngineError::PrecisionInsufficient`] instead of
//! guessing.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intpoly::IntPoly;
use crate::salem::BetaEnclosure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("precision insufficient to certify digit {n}; refine the enclosure and retry")]
    PrecisionInsufficient { n: u64 },
    #[error("gave up after raising precision to {bits} bits at step {n}")]
    PrecisionExhausted { n: u64, bits: u32 },
    #[error("polynomial must be monic of degree at least 2")]
    NotMonic,
    #[error("polynomial has no simple real root above 1")]
    NoDominantRoot,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coefficients of a reduced state, ascending degree, length `deg P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateVec {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl StateVec {
    pub fn one(deg: usize) -> Self {
        let mut v = vec![0i64; deg];
        v[0] = 1;
        StateVec::Small(v)
    }

    pub fn from_big(v: Vec<BigInt>) -> Self {
        match v.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<i64>>>() {
            Some(small) => StateVec::Small(small),
            None => StateVec::Big(v),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            StateVec::Small(v) => v.len(),
            StateVec::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        match self {
            StateVec::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            StateVec::Big(v) => v.clone(),
        }
    }

    pub fn trailing(&self) -> BigInt {
        match self {
            StateVec::Small(v) => BigInt::from(v[0]),
            StateVec::Big(v) => v[0].clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            StateVec::Small(v) => v.iter().all(|&x| x == 0),
            StateVec::Big(v) => v.iter().all(Zero::is_zero),
        }
    }

    /// Bit length of the largest coefficient magnitude.
    pub fn max_bits(&self) -> u64 {
        match self {
            StateVec::Small(v) => v
                .iter()
                .map(|x| 64 - x.unsigned_abs().leading_zeros() as u64)
                .max()
                .unwrap_or(0),
            StateVec::Big(v) => v.iter().map(|x| x.bits()).max().unwrap_or(0),
        }
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.to_big())
    }
}

/// Largest `|L(B_k)|` seen so far and the step where it was first reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub index: u64,
    pub value: BigInt,
}

/// Resumable engine state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineState {
    pub n: u64,
    pub bcoeffs: StateVec,
    pub record: Record,
    pub checkpoints: BTreeMap<u64, StateVec>,
}

impl EngineState {
    /// The state `B_0 = 1` for a polynomial of degree `deg`.
    pub fn initial(deg: usize) -> Self {
        let bcoeffs = StateVec::one(deg);
        let mut checkpoints = BTreeMap::new();
        checkpoints.insert(0, bcoeffs.clone());
        EngineState {
            n: 0,
            bcoeffs,
            record: Record {
                index: 0,
                value: BigInt::one(),
            },
            checkpoints,
        }
    }

    /// A bare state at step `n` without history (used when restarting a scan).
    pub fn at(n: u64, bcoeffs: StateVec) -> Self {
        let value = bcoeffs.trailing().abs();
        EngineState {
            n,
            bcoeffs,
            record: Record { index: n, value },
            checkpoints: BTreeMap::new(),
        }
    }
}

/// Fixed-point numbers modulo `2^(64 * limbs)`, little-endian limbs.
///
/// The accumulated value `beta * B(beta)` is small even when the individual
/// terms are huge, so wrapping two's-complement arithmetic recovers it exactly.
mod fixed {
    #[inline]
    pub fn add_mul_small(acc: &mut [u64], a: &[u64], m: u64) {
        let mut carry: u128 = 0;
        let n = acc.len();
        for j in 0..n {
            let prod = if j < a.len() { a[j] as u128 * m as u128 } else { 0 };
            let t = acc[j] as u128 + prod + carry;
            acc[j] = t as u64;
            carry = t >> 64;
            if j >= a.len() && carry == 0 {
                break;
            }
        }
    }

    #[inline]
    pub fn sub_mul_small(acc: &mut [u64], a: &[u64], m: u64) {
        let mut carry: u128 = 0;
        let n = acc.len();
        for j in 0..n {
            let prod = if j < a.len() { a[j] as u128 * m as u128 } else { 0 } + carry;
            let (r, borrow) = acc[j].overflowing_sub(prod as u64);
            acc[j] = r;
            carry = (prod >> 64) + borrow as u128;
            if j >= a.len() && carry == 0 {
                break;
            }
        }
    }

    pub fn mac(acc: &mut [u64], a: &[u64], mult: &[u64], negative: bool) {
        for (k, &m) in mult.iter().enumerate() {
            if k >= acc.len() {
                break;
            }
            if m == 0 {
                continue;
            }
            let span = acc.len() - k;
            let a = &a[..a.len().min(span)];
            if negative {
                sub_mul_small(&mut acc[k..], a, m);
            } else {
                add_mul_small(&mut acc[k..], a, m);
            }
        }
    }

    /// Integer part of a two's-complement fixed-point value with `frac` fractional limbs.
    pub fn floor_i64(acc: &[u64], frac: usize) -> Option<i64> {
        let int = acc[frac] as i64;
        // the value must lie well inside the i64 range
        if int.unsigned_abs() < (1u64 << 62) {
            Some(int)
        } else {
            None
        }
    }
}

/// Lower and upper fixed-point bounds on `beta^1 ..= beta^d`.
#[derive(Clone, Debug)]
pub struct PowerTable {
    frac_limbs: usize,
    lo: Vec<Vec<u64>>,
    hi: Vec<Vec<u64>>,
    enclosure: BetaEnclosure,
}

fn to_limbs(x: &BigInt, limbs: usize) -> Vec<u64> {
    let (sign, mut mag) = x.to_u64_digits();
    mag.resize(limbs.max(mag.len()), 0);
    mag.truncate(limbs);
    if sign == Sign::Minus {
        // two's complement
        let mut carry = true;
        for l in mag.iter_mut() {
            *l = !*l;
            if carry {
                let (r, c) = l.overflowing_add(1);
                *l = r;
                carry = c;
            }
        }
    }
    mag
}

impl PowerTable {
    pub fn new(deg: usize, enclosure: BetaEnclosure, frac_bits: u32) -> Self {
        let frac_limbs = (frac_bits as usize).div_ceil(64);
        let limbs = frac_limbs + 1;
        let scale = BigInt::one() << (64 * frac_limbs);
        let mut lo = Vec::with_capacity(deg);
        let mut hi = Vec::with_capacity(deg);
        let mut plo = BigRational::one();
        let mut phi = BigRational::one();
        for _ in 0..deg {
            plo *= &enclosure.lo;
            phi *= &enclosure.hi;
            let l = (&plo * BigRational::from_integer(scale.clone())).floor().to_integer();
            let h = (&phi * BigRational::from_integer(scale.clone())).ceil().to_integer();
            lo.push(to_limbs(&l, limbs));
            hi.push(to_limbs(&h, limbs));
        }
        PowerTable {
            frac_limbs,
            lo,
            hi,
            enclosure,
        }
    }

    pub fn frac_bits(&self) -> u32 {
        64 * self.frac_limbs as u32
    }

    pub fn enclosure(&self) -> &BetaEnclosure {
        &self.enclosure
    }

    /// Certified `floor(beta * B(beta))`, or `None` when the bounds straddle an integer.
    pub fn floor_beta_times(&self, state: &StateVec) -> Option<i64> {
        let limbs = self.frac_limbs + 1;
        let mut lo_acc = vec![0u64; limbs];
        let mut hi_acc = vec![0u64; limbs];
        match state {
            StateVec::Small(v) => {
                for (i, &b) in v.iter().enumerate() {
                    if b == 0 {
                        continue;
                    }
                    let m = [b.unsigned_abs()];
                    if b > 0 {
                        fixed::mac(&mut lo_acc, &self.lo[i], &m, false);
                        fixed::mac(&mut hi_acc, &self.hi[i], &m, false);
                    } else {
                        fixed::mac(&mut lo_acc, &self.hi[i], &m, true);
                        fixed::mac(&mut hi_acc, &self.lo[i], &m, true);
                    }
                }
            }
            StateVec::Big(v) => {
                for (i, b) in v.iter().enumerate() {
                    let (sign, m) = b.to_u64_digits();
                    match sign {
                        Sign::NoSign => {}
                        Sign::Plus => {
                            fixed::mac(&mut lo_acc, &self.lo[i], &m, false);
                            fixed::mac(&mut hi_acc, &self.hi[i], &m, false);
                        }
                        Sign::Minus => {
                            fixed::mac(&mut lo_acc, &self.hi[i], &m, true);
                            fixed::mac(&mut hi_acc, &self.lo[i], &m, true);
                        }
                    }
                }
            }
        }
        let lo = fixed::floor_i64(&lo_acc, self.frac_limbs)?;
        let hi = fixed::floor_i64(&hi_acc, self.frac_limbs)?;
        (lo == hi).then_some(lo)
    }
}

/// The error bound `eta = sum |b_i| i (beta0 + eps)^{i-1} eps` on
/// `|beta r_{n-1} - beta0 B_{n-1}(beta0)|`, with `B_{n-1}` written in the
/// basis `x^i` of `x B_{n-1}(x)`.
pub fn eta(state: &StateVec, beta0: &BigRational, eps: &BigRational) -> BigRational {
    let top = beta0 + eps;
    let mut total = BigRational::zero();
    let mut pow = BigRational::one(); // (beta0 + eps)^{i-1}
    for (k, b) in state.to_big().iter().enumerate() {
        let i = k + 1;
        total += BigRational::from_integer(b.abs() * BigInt::from(i)) * &pow * eps;
        pow *= &top;
    }
    total
}

/// Monic reduction data for `P`.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub poly: IntPoly,
    small: Option<Vec<i64>>,
    big: Vec<BigInt>,
}

impl Reducer {
    pub fn new(poly: &IntPoly) -> Result<Self, EngineError> {
        match poly.degree() {
            Some(d) if d >= 2 && poly.is_monic() => {}
            _ => return Err(EngineError::NotMonic),
        }
        let d = poly.degree().expect("checked");
        let big = poly.coeffs()[..d].to_vec();
        let small = big.iter().map(ToPrimitive::to_i64).collect();
        Ok(Reducer {
            poly: poly.clone(),
            small,
            big,
        })
    }

    pub fn degree(&self) -> usize {
        self.big.len()
    }

    /// `x * B mod P`.
    pub fn shift(&self, state: &StateVec) -> StateVec {
        if let (StateVec::Small(v), Some(p)) = (state, &self.small) {
            if let Some(out) = shift_small(v, p) {
                return StateVec::Small(out);
            }
        }
        let v = state.to_big();
        let d = v.len();
        let top = &v[d - 1];
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let prev = if i == 0 { BigInt::zero() } else { v[i - 1].clone() };
            out.push(prev - top * &self.big[i]);
        }
        StateVec::from_big(out)
    }
}

#[inline]
fn shift_small(v: &[i64], p: &[i64]) -> Option<Vec<i64>> {
    let d = v.len();
    let top = v[d - 1];
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let prev = if i == 0 { 0 } else { v[i - 1] };
        out.push(prev.checked_sub(top.checked_mul(p[i])?)?);
    }
    Some(out)
}

fn subtract_digit(state: StateVec, digit: i64) -> StateVec {
    match state {
        StateVec::Small(mut v) => match v[0].checked_sub(digit) {
            Some(x) => {
                v[0] = x;
                StateVec::Small(v)
            }
            None => {
                let mut big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                big[0] -= digit;
                StateVec::from_big(big)
            }
        },
        StateVec::Big(mut v) => {
            v[0] -= digit;
            StateVec::from_big(v)
        }
    }
}

fn only_constant(state: &StateVec) -> Option<BigInt> {
    match state {
        StateVec::Small(v) => v[1..].iter().all(|&x| x == 0).then(|| BigInt::from(v[0])),
        StateVec::Big(v) => v[1..].iter().all(Zero::is_zero).then(|| v[0].clone()),
    }
}

/// One greedy step on a bare state vector: `(B_n, c_n)` from `B_{n-1}`.
pub fn step_vec(
    state: &StateVec,
    reducer: &Reducer,
    table: &PowerTable,
    n: u64,
) -> Result<(StateVec, u64), EngineError> {
    let shifted = reducer.shift(state);
    // beta * B(beta) is an exact integer only when x B reduces to a constant
    if let Some(k) = only_constant(&shifted) {
        let digit = k
            .to_u64()
            .ok_or_else(|| EngineError::Internal(format!("negative digit at step {n}")))?;
        return Ok((StateVec::from_big(vec![BigInt::zero(); state.len()]), digit));
    }
    let digit = table
        .floor_beta_times(state)
        .ok_or(EngineError::PrecisionInsufficient { n })?;
    if digit < 0 {
        return Err(EngineError::Internal(format!("negative digit at step {n}")));
    }
    Ok((subtract_digit(shifted, digit), digit as u64))
}

/// One greedy step in the functional shape: the new state (record updated,
/// checkpoints untouched) and the emitted digit.
pub fn step(
    state: &EngineState,
    poly: &IntPoly,
    enclosure: &BetaEnclosure,
) -> Result<(EngineState, u64), EngineError> {
    let reducer = Reducer::new(poly)?;
    let bits = frac_bits_for(enclosure, &state.bcoeffs);
    let table = PowerTable::new(reducer.degree(), enclosure.clone(), bits);
    let n = state.n + 1;
    let (next, digit) = step_vec(&state.bcoeffs, &reducer, &table, n)?;
    let mut out = state.clone();
    let trailing = next.trailing().abs();
    if trailing > out.record.value {
        out.record = Record {
            index: n,
            value: trailing,
        };
    }
    out.n = n;
    out.bcoeffs = next;
    Ok((out, digit))
}

/// Fixed-point fraction bits matching the enclosure width plus the state size.
pub fn frac_bits_for(enclosure: &BetaEnclosure, state: &StateVec) -> u32 {
    let w = enclosure.width();
    // -log2(width), rounded down
    let width_bits = if w.is_zero() {
        0
    } else {
        let (n, d) = (w.numer().bits() as i64, w.denom().bits() as i64);
        (d - n).max(0) as u32
    };
    (width_bits + 64).max(state.max_bits() as u32 + 64 + 160)
}

/// Dyadic enclosure of the dominant root with width at most `2^-bits`.
///
/// Bisection runs on integers `X` with `x = X / 2^k`, so no rational
/// normalization is needed. The bracket must satisfy `P(lo) < 0 < P(hi)`.
pub fn dyadic_enclosure(poly: &IntPoly, seed: Option<BetaEnclosure>, bits: u32) -> BetaEnclosure {
    let (mut lo, mut hi, mut k) = seed
        .as_ref()
        .and_then(scaled_bracket)
        .unwrap_or_else(|| (BigInt::one(), crate::intpoly::cauchy_root_bound(poly), 0));
    let coeffs = poly.coeffs();
    loop {
        let width_bits = (&hi - &lo).bits() as i64 - k as i64;
        // width = (hi - lo) / 2^k <= 2^(bits(hi-lo) - k)
        if width_bits <= -(bits as i64) {
            break;
        }
        lo <<= 1;
        hi <<= 1;
        k += 1;
        let mid = (&lo + &hi) >> 1;
        if mid == lo {
            continue;
        }
        if scaled_sign(coeffs, &mid, k) < 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let den = BigInt::one() << k;
    BetaEnclosure {
        lo: BigRational::new(lo, den.clone()),
        hi: BigRational::new(hi, den),
    }
}

/// Sign of `P(x / 2^k)`.
fn scaled_sign(coeffs: &[BigInt], x: &BigInt, k: u32) -> i8 {
    let d = coeffs.len() - 1;
    let mut acc = coeffs[d].clone();
    for i in (0..d).rev() {
        acc = acc * x + (&coeffs[i] << (k as usize * (d - i)));
    }
    match acc.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn scaled_bracket(e: &BetaEnclosure) -> Option<(BigInt, BigInt, u32)> {
    let dyadic_bits = |d: &BigInt| {
        let tz = d.trailing_zeros()?;
        (d == &(BigInt::one() << tz)).then_some(tz as u32)
    };
    let (kl, kh) = (dyadic_bits(e.lo.denom())?, dyadic_bits(e.hi.denom())?);
    let k = kl.max(kh);
    let lo = e.lo.numer() << (k - kl);
    let hi = e.hi.numer() << (k - kh);
    Some((lo, hi, k))
}

/// Smallest `k` with `eps >= 2^-k`.
pub fn eps_to_bits(eps: &BigRational) -> u32 {
    assert!(eps.is_positive(), "eps must be positive");
    let mut bits = 0u32;
    let mut pow = BigRational::one();
    while &pow > eps {
        pow /= BigInt::from(2);
        bits += 1;
    }
    bits
}

/// Parse a decimal such as `5e-64` or `0.001` into an exact rational.
pub fn parse_eps(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let mut den = BigInt::from(10).pow(frac.len() as u32);
    let mut num = digits;
    if exp >= 0 {
        num *= BigInt::from(10).pow(exp as u32);
    } else {
        den *= BigInt::from(10).pow((-exp) as u32);
    }
    let r = BigRational::new(num, den);
    r.is_positive().then_some(r)
}

/// Bits for 70 decimal digits.
const GUARD: u32 = 233;

fn guard_bits(state: &StateVec) -> u32 {
    state.max_bits() as u32 + GUARD
}

fn round64(bits: u32) -> u32 {
    bits.div_ceil(64) * 64
}

/// Sequential digit generator with automatic precision escalation.
#[derive(Clone, Debug)]
pub struct Stepper {
    reducer: Reducer,
    table: PowerTable,
    enc_bits: u32,
    max_bits: u32,
}

impl Stepper {
    pub fn new(poly: &IntPoly, eps: &BigRational) -> Result<Self, EngineError> {
        let reducer = Reducer::new(poly)?;
        let p1 = poly.eval_rational(&BigRational::one());
        if !p1.is_negative() {
            return Err(EngineError::NoDominantRoot);
        }
        let one = StateVec::one(reducer.degree());
        let enc_bits = round64(eps_to_bits(eps).max(guard_bits(&one)));
        let enc = dyadic_enclosure(poly, None, enc_bits);
        let bits = frac_bits_for(&enc, &one);
        let table = PowerTable::new(reducer.degree(), enc, bits);
        Ok(Stepper {
            reducer,
            table,
            enc_bits,
            max_bits: 1 << 20,
        })
    }

    pub fn degree(&self) -> usize {
        self.reducer.degree()
    }

    pub fn poly(&self) -> &IntPoly {
        &self.reducer.poly
    }

    pub fn precision_bits(&self) -> u32 {
        self.enc_bits
    }

    fn escalate(&mut self, n: u64, state: &StateVec) -> Result<(), EngineError> {
        let next = self.enc_bits.saturating_mul(2);
        if next > self.max_bits {
            return Err(EngineError::PrecisionExhausted {
                n,
                bits: self.enc_bits,
            });
        }
        self.enc_bits = next;
        self.rebuild(state);
        Ok(())
    }

    fn rebuild(&mut self, state: &StateVec) {
        let enc = dyadic_enclosure(
            &self.reducer.poly,
            Some(self.table.enclosure().clone()),
            self.enc_bits,
        );
        let bits = frac_bits_for(&enc, state);
        self.table = PowerTable::new(self.reducer.degree(), enc, bits);
    }

    /// `B_n` and `c_n` from `B_{n-1}`, raising precision until the floor is certified.
    pub fn advance(&mut self, state: &StateVec, n: u64) -> Result<(StateVec, u64), EngineError> {
        // keep about 70 decimal guard digits beyond the coefficient size
        let need = guard_bits(state);
        if need > self.enc_bits {
            self.enc_bits = round64(need.max(self.enc_bits.saturating_mul(2)));
            self.rebuild(state);
        }
        loop {
            match step_vec(state, &self.reducer, &self.table, n) {
                Err(EngineError::PrecisionInsufficient { .. }) => self.escalate(n, state)?,
                other => return other,
            }
        }
    }
}

/// Independent digit oracle used by tests: reduce `x^n - sum c_i x^{n-i}` mod `P`.
pub fn naive_state(poly: &IntPoly, digits: &[u64]) -> IntPoly {
    let n = digits.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    for (i, &c) in digits.iter().enumerate() {
        coeffs[n - 1 - i] -= BigInt::from(c);
    }
    let (_, r) = IntPoly::new(coeffs).divmod_monic(poly).expect("monic");
    r
}

/// Rational floor helper shared with tests.
pub fn rational_floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salem::SalemTriple;

    fn default_eps() -> BigRational {
        parse_eps("5e-64").unwrap()
    }

    fn run(t: SalemTriple, steps: usize) -> (Vec<u64>, Vec<StateVec>) {
        let mut s = Stepper::new(&t.poly(), &default_eps()).unwrap();
        let mut state = StateVec::one(6);
        let mut digits = vec![];
        let mut states = vec![state.clone()];
        for n in 1..=steps as u64 {
            let (next, d) = s.advance(&state, n).unwrap();
            digits.push(d);
            states.push(next.clone());
            state = next;
        }
        (digits, states)
    }

    #[test]
    fn first_digit_examples() {
        let (d, states) = run(SalemTriple::new(-1, 0, -1), 1);
        assert_eq!(d, vec![1]);
        assert_eq!(states[1], StateVec::Small(vec![-1, 1, 0, 0, 0, 0]));
        let (d, _) = run(SalemTriple::new(-3, -1, -7), 1);
        assert_eq!(d, vec![3]);
    }

    #[test]
    fn zero_state_is_absorbing() {
        let t = SalemTriple::new(-1, 0, -1);
        let mut s = Stepper::new(&t.poly(), &default_eps()).unwrap();
        let zero = StateVec::Small(vec![0; 6]);
        let (next, d) = s.advance(&zero, 1).unwrap();
        assert_eq!(d, 0);
        assert!(next.is_zero());
    }

    #[test]
    fn states_match_naive_reduction() {
        for t in [
            SalemTriple::new(-1, 0, -1),
            SalemTriple::new(-3, -1, -7),
            SalemTriple::new(-2, 0, 1),
            SalemTriple::new(-7, -29, -43),
        ] {
            let (digits, states) = run(t, 30);
            for n in 0..=30 {
                assert_eq!(states[n].to_poly(), naive_state(&t.poly(), &digits[..n]));
            }
        }
    }

    #[test]
    fn functional_step_matches_stepper() {
        let t = SalemTriple::new(-3, -1, -7);
        let enc = crate::salem::refine_beta(&t, &default_eps());
        let mut st = EngineState::initial(6);
        let (digits, _) = run(t, 20);
        for &d in &digits {
            let (next, digit) = step(&st, &t.poly(), &enc).unwrap();
            assert_eq!(digit, d);
            st = next;
        }
        assert_eq!(st.n, 20);
    }

    #[test]
    fn coarse_enclosure_reports_precision_failure() {
        let t = SalemTriple::new(-3, -1, -7);
        let enc = crate::salem::refine_beta(&t, &BigRational::new(1.into(), 4.into()));
        // beta * 1 with beta in a width-1/4 bracket around 3.78 straddles nothing,
        // but a state with large coefficients spreads the bounds
        let st = EngineState::at(5, StateVec::Small(vec![0, 0, 0, 0, 0, 1000]));
        assert_eq!(
            step(&st, &t.poly(), &enc).unwrap_err(),
            EngineError::PrecisionInsufficient { n: 6 }
        );
    }

    #[test]
    fn interval_width_within_eta() {
        let t = SalemTriple::new(-3, -1, -7);
        let enc = crate::salem::refine_beta(&t, &default_eps());
        let state = StateVec::Small(vec![12, -7, 3, 0, 5, -2]);
        let table = PowerTable::new(6, enc.clone(), 512);
        assert!(table.floor_beta_times(&state).is_some());
        let e = eta(&state, &enc.midpoint(), &enc.width());
        assert!(e < BigRational::new(1.into(), BigInt::from(10).pow(55)));
    }

    #[test]
    fn big_coefficient_path_agrees_with_small() {
        let t = SalemTriple::new(-3, -1, -7);
        let enc = crate::salem::refine_beta(&t, &default_eps());
        let table = PowerTable::new(6, enc, 512);
        let small = StateVec::Small(vec![-5, 2, 7, -1, 0, 3]);
        let big = StateVec::Big(small.to_big());
        assert_eq!(table.floor_beta_times(&small), table.floor_beta_times(&big));
    }

    #[test]
    fn eps_parsing() {
        assert_eq!(
            parse_eps("5e-3").unwrap(),
            BigRational::new(5.into(), 1000.into())
        );
        assert_eq!(parse_eps("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert!(parse_eps("0").is_none());
        assert!(parse_eps("abc").is_none());
        assert_eq!(eps_to_bits(&BigRational::new(1.into(), 4.into())), 2);
    }
}
