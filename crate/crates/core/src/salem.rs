//! Degree-6 Salem polynomials `x^6 + ax^5 + bx^4 + cx^3 + bx^2 + ax + 1`.
//!
//! Certification is exact. Writing `y = x + 1/x`, the sextic becomes
//! `x^3 U(y)` with `U(y) = y^3 + ay^2 + (b-3)y + (c-2a)`. The sextic is Salem
//! iff `U` has no rational root, two roots in `(-2, 2)` and one in `(2, inf)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::intpoly::{IntPoly, SturmChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SalemStatus {
    CertifiedSalem,
    CertifiedNotSalem,
}

/// Coefficients `(a, b, c)` of a reciprocal sextic together with its verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SalemTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl SalemTriple {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        SalemTriple { a, b, c }
    }

    /// The sextic `P(x)`.
    pub fn poly(&self) -> IntPoly {
        IntPoly::from_i64s(&[1, self.a, self.b, self.c, self.b, self.a, 1])
    }

    /// The cubic `U(y)` with `P(x) = x^3 U(x + 1/x)`.
    pub fn trace_cubic(&self) -> IntPoly {
        IntPoly::from_i64s(&[self.c - 2 * self.a, self.b - 3, self.a, 1])
    }

    pub fn trace(&self) -> i64 {
        -self.a
    }

    pub fn status(&self) -> SalemStatus {
        is_salem(self.a, self.b, self.c)
    }

    pub fn is_salem(&self) -> bool {
        self.status() == SalemStatus::CertifiedSalem
    }
}

impl fmt::Display for SalemTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for SalemTriple {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<i64> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [a, b, c] => Ok(SalemTriple::new(*a, *b, *c)),
            _ => Err(format!("expected three comma-separated integers, got {s:?}")),
        }
    }
}

fn cubic_at(a: i128, b: i128, k0: i128, y: i128) -> i128 {
    ((y + a) * y + (b - 3)) * y + k0
}

fn cubic_has_integer_root(a: i128, b: i128, k0: i128) -> bool {
    if k0 == 0 {
        return true;
    }
    let n = k0.unsigned_abs();
    let mut d: u128 = 1;
    while d * d <= n {
        if n % d == 0 {
            for cand in [d, n / d] {
                let y = cand as i128;
                if cubic_at(a, b, k0, y) == 0 || cubic_at(a, b, k0, -y) == 0 {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

/// Exact Salem verdict for the sextic with coefficients `(a, b, c)`.
pub fn is_salem(a: i64, b: i64, c: i64) -> SalemStatus {
    use SalemStatus::*;
    let (a128, b128) = (a as i128, b as i128);
    let k0 = c as i128 - 2 * a128;
    // Roots y1 < y2 in (-2, 2) and y3 > 2 force U(-2) < 0 and U(2) < 0.
    if cubic_at(a128, b128, k0, 2) >= 0 || cubic_at(a128, b128, k0, -2) >= 0 {
        return CertifiedNotSalem;
    }
    // A monic integer cubic is reducible over Q iff it has an integer root.
    if cubic_has_integer_root(a128, b128, k0) {
        return CertifiedNotSalem;
    }
    let u = SalemTriple::new(a, b, c).trace_cubic();
    let chain = SturmChain::new(&u).expect("irreducible cubic is squarefree");
    let two = BigRational::from_integer(BigInt::from(2));
    let inside = chain.count(&-two.clone(), &two);
    let above = chain.count_above(&two);
    if inside == 2 && above == 1 {
        CertifiedSalem
    } else {
        CertifiedNotSalem
    }
}

/// The sufficient conditions of Boyd's recognition lemma, as stated.
pub fn boyd_lemma_holds(a: i64, b: i64, c: i64) -> bool {
    let u = |y: i64| ((y + a) * y + (b - 3)) * y + (c - 2 * a);
    let bound = 1 + a.abs().max((b - 3).abs()).max((c - 2 * a).abs());
    u(2) < 0
        && u(-2) < 0
        && (-1..=bound).all(|n| u(n) != 0)
        && (u(-1) > 0 || u(0) > 0 || u(1) > 0)
}

/// Half-widths of the `(b, c)` scan box for a given `a`.
///
/// Five roots have modulus at most 1 and the remaining one is below
/// `M = -a + 4`, so `|b| = |e2| <= 10 + 5M` and `|c| = |e3| <= 10 + 10M`. The
/// box used is the slightly wider `15 + 5M` by `20 + 10M`.
pub fn scan_box(a: i64) -> (i64, i64) {
    let m = (-a + 4).max(1);
    (15 + 5 * m, 20 + 10 * m)
}

/// Every degree-6 Salem triple with `trace = -a <= max_trace`, sorted by `(a, b, c)`.
///
/// The trace of a degree-6 Salem number exceeds `-2`, so `a` ranges over
/// `-max_trace ..= 1`.
pub fn enumerate_by_trace(max_trace: i64) -> Vec<SalemTriple> {
    if max_trace < -1 {
        return Vec::new();
    }
    let pairs: Vec<(i64, i64)> = (-max_trace..=1)
        .flat_map(|a| {
            let (bb, _) = scan_box(a);
            (-bb..=bb).map(move |b| (a, b))
        })
        .collect();
    let mut out: Vec<SalemTriple> = pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let (_, cb) = scan_box(a);
            (-cb..=cb)
                .filter(move |&c| is_salem(a, b, c) == SalemStatus::CertifiedSalem)
                .map(move |c| SalemTriple::new(a, b, c))
        })
        .collect();
    out.sort();
    out
}

/// Rational bracket `lo < beta < hi` around the Salem root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl BetaEnclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    /// Bisect a sign-changing bracket of `p` on `(lo, hi)` until the width is at
    /// most `eps`. Endpoints stay dyadic when the seed endpoints are.
    pub fn bisect(p: &IntPoly, lo: BigRational, hi: BigRational, eps: &BigRational) -> Self {
        let lo_sign = p.eval_rational(&lo).signum();
        assert!(
            !lo_sign.is_zero() && lo_sign != p.eval_rational(&hi).signum(),
            "bracket must straddle a simple root"
        );
        let mut enc = BetaEnclosure { lo, hi };
        while &enc.width() > eps {
            enc = enc.halve(p, &lo_sign);
        }
        enc
    }

    fn halve(self, p: &IntPoly, lo_sign: &BigRational) -> Self {
        let mid = self.midpoint();
        let s = p.eval_rational(&mid).signum();
        assert!(!s.is_zero(), "hit a rational root while bisecting");
        if &s == lo_sign {
            BetaEnclosure { lo: mid, hi: self.hi }
        } else {
            BetaEnclosure { lo: self.lo, hi: mid }
        }
    }

    /// One bisection step against `p`.
    pub fn refine_once(self, p: &IntPoly) -> Self {
        let lo_sign = p.eval_rational(&self.lo).signum();
        self.halve(p, &lo_sign)
    }

    /// Enclosure of the unique root above 1 of a monic polynomial whose only
    /// real root in `(1, inf)` is simple.
    pub fn for_dominant_root(p: &IntPoly, eps: &BigRational) -> Self {
        let hi = crate::intpoly::cauchy_root_bound(p);
        Self::bisect(p, BigRational::one(), BigRational::from_integer(hi), eps)
    }
}

/// Enclosure of `beta` of width at most `eps`, seeded from `(1, -a + 4)`.
pub fn refine_beta(t: &SalemTriple, eps: &BigRational) -> BetaEnclosure {
    let hi = BigRational::from_integer(BigInt::from(-t.a + 4));
    BetaEnclosure::bisect(&t.poly(), BigRational::one(), hi, eps)
}

/// Exact `floor(beta)`.
pub fn floor_beta(t: &SalemTriple) -> i64 {
    floor_of_root(&t.poly(), refine_beta(t, &BigRational::one()))
}

pub(crate) fn floor_of_root(p: &IntPoly, mut enc: BetaEnclosure) -> i64 {
    loop {
        let (lo, hi) = (enc.lo.floor(), enc.hi.floor());
        if lo == hi || (enc.hi.is_integer() && &lo + BigRational::one() == hi) {
            return lo.to_integer().to_i64().expect("floor fits i64");
        }
        enc = enc.refine_once(p);
    }
}

/// `pi` to 110 decimal places.
const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";

/// A nonnegative real held as `scaled / 10^places`, truncated toward zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    scaled: BigInt,
    places: u32,
}

impl Decimal {
    pub fn from_rational(x: &BigRational, places: u32) -> Self {
        let scale = BigInt::from(10).pow(places);
        Decimal {
            scaled: (x * BigRational::from_integer(scale)).floor().to_integer(),
            places,
        }
    }

    pub fn places(&self) -> u32 {
        self.places
    }

    /// Truncate (not round) to the given number of decimal places.
    pub fn truncate(&self, places: u32) -> Decimal {
        assert!(places <= self.places);
        let drop = BigInt::from(10).pow(self.places - places);
        Decimal {
            scaled: self.scaled.div_floor(&drop),
            places,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let s = self.to_string();
        s.parse().expect("decimal parses as f64")
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.scaled.is_negative();
        let digits = self.scaled.abs().to_string();
        let p = self.places as usize;
        let padded = if digits.len() <= p {
            format!("{}{}", "0".repeat(p + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - p);
        if neg {
            write!(f, "-")?;
        }
        if p == 0 {
            write!(f, "{int}")
        } else {
            write!(f, "{int}.{frac}")
        }
    }
}

fn parse_decimal(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let num: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    BigRational::new(num, BigInt::from(10).pow(frac.len() as u32))
}

/// Integer square root bracket: `floor(sqrt(n))`.
fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

/// Working precision for the heuristic constant, in decimal digits.
pub const HEURISTIC_WORKING_DIGITS: u32 = 80;

/// `C(beta) = (pi/6)^2 beta^5 / disc^{1/2}`, evaluated with 80 working digits.
///
/// Returns `None` when the discriminant is not positive (never the case for a
/// degree-6 Salem polynomial: two complex-conjugate pairs give a positive sign).
pub fn heuristic_constant(t: &SalemTriple) -> Option<Decimal> {
    heuristic_constant_of(&t.poly(), &refine_beta(t, &eps_pow10(HEURISTIC_WORKING_DIGITS + 10)))
}

pub(crate) fn eps_pow10(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(digits))
}

pub fn heuristic_constant_of(p: &IntPoly, enc: &BetaEnclosure) -> Option<Decimal> {
    let disc = p.discriminant();
    if !disc.is_positive() {
        return None;
    }
    let w = HEURISTIC_WORKING_DIGITS;
    let scale = BigInt::from(10).pow(w);
    // sqrt(disc) to w digits, from floor(sqrt(disc * 10^{2w}))
    let root = BigRational::new(isqrt(&(&disc * &scale * &scale)), scale.clone());
    let pi = parse_decimal(PI_DIGITS);
    let beta = enc.midpoint();
    let pi6 = pi / BigInt::from(6);
    let value = &pi6 * &pi6 * beta.pow(5) / root;
    Some(Decimal::from_rational(&value, w))
}
