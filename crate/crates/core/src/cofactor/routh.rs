//! Routh tables and the disk test obtained from the map `f(z) = k (1+z)/(1-z)`,
//! which sends the open left half-plane onto `|w| < k`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intpoly::{IntPoly, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouthTable {
    pub rows: Vec<Vec<BigRational>>,
    pub defined: bool,
}

impl RouthTable {
    pub fn first_column(&self) -> Vec<BigRational> {
        self.rows.iter().filter_map(|r| r.first().cloned()).collect()
    }

    /// All roots in the open left half-plane.
    pub fn is_stable(&self) -> bool {
        if !self.defined {
            return false;
        }
        let col = self.first_column();
        let pos = col[0].is_positive();
        col.iter().all(|x| if pos { x.is_positive() } else { x.is_negative() })
    }
}

fn split_rows<T: Clone>(desc: &[T]) -> (Vec<T>, Vec<T>) {
    let r0 = desc.iter().step_by(2).cloned().collect();
    let r1 = desc.iter().skip(1).step_by(2).cloned().collect();
    (r0, r1)
}

/// Routh table of `p`; `defined` is false as soon as a first-column entry is zero.
pub fn routh_table(p: &RatPoly) -> RouthTable {
    let n = p.degree().expect("nonzero polynomial");
    let desc: Vec<BigRational> = p.coeffs().iter().rev().cloned().collect();
    let (r0, r1) = split_rows(&desc);
    let mut rows = vec![r0];
    if n == 0 {
        return RouthTable { rows, defined: true };
    }
    rows.push(r1);
    let mut defined = true;
    while rows.len() <= n {
        let i = rows.len();
        let (prev, cur) = (&rows[i - 2], &rows[i - 1]);
        if cur[0].is_zero() {
            defined = false;
            break;
        }
        let len = prev.len() - 1;
        let at = |r: &Vec<BigRational>, j: usize| r.get(j).cloned().unwrap_or_else(BigRational::zero);
        let next: Vec<BigRational> = (0..len)
            .map(|j| (&cur[0] * at(prev, j + 1) - &prev[0] * at(cur, j + 1)) / &cur[0])
            .collect();
        rows.push(next);
    }
    if defined && rows.iter().any(|r| r[0].is_zero()) {
        defined = false;
    }
    RouthTable { rows, defined }
}

/// Fraction-free Routh stability test on ascending integer coefficients.
/// Rows are kept as positive multiples of the true rows; while no leading
/// entry vanishes the rows form a subresultant sequence, so dividing by the
/// square of the previous leading entry is exact and sizes stay polynomial.
pub fn routh_stable_big(h: &[BigInt]) -> bool {
    let n = match h.iter().rposition(|x| !x.is_zero()) {
        Some(n) => n,
        None => return false,
    };
    if n + 1 != h.len() {
        return false;
    }
    let desc: Vec<BigInt> = h.iter().rev().cloned().collect();
    let (mut r0, mut r1) = split_rows(&desc);
    let positive = r0[0].is_positive();
    for i in 1..=n {
        let Some(lead) = r1.first() else { return false };
        if lead.is_zero() || lead.is_positive() != positive {
            return false;
        }
        if i == n {
            break;
        }
        let at = |r: &Vec<BigInt>, j: usize| r.get(j).cloned().unwrap_or_else(BigInt::zero);
        let raw: Vec<BigInt> = (0..r0.len() - 1)
            .map(|j| &r1[0] * (&r1[0] * at(&r0, j + 1) - &r0[0] * at(&r1, j + 1)))
            .collect();
        let next = if i == 1 {
            raw
        } else {
            let divisor = &r0[0] * &r0[0];
            raw.into_iter()
                .map(|x| {
                    debug_assert!((&x % &divisor).is_zero());
                    x / &divisor
                })
                .collect()
        };
        r0 = std::mem::replace(&mut r1, next);
    }
    true
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

/// Same test on machine integers; `None` on overflow.
pub fn routh_stable_i128(h: &[i128]) -> Option<bool> {
    let n = match h.iter().rposition(|&x| x != 0) {
        Some(n) => n,
        None => return Some(false),
    };
    if n + 1 != h.len() {
        return Some(false);
    }
    let mut r0 = [0i128; 16];
    let mut r1 = [0i128; 16];
    if n / 2 + 1 >= r0.len() {
        return None;
    }
    let (mut l0, mut l1) = (0usize, 0usize);
    for (idx, &v) in h.iter().rev().enumerate() {
        if idx % 2 == 0 {
            r0[l0] = v;
            l0 += 1;
        } else {
            r1[l1] = v;
            l1 += 1;
        }
    }
    let positive = r0[0] > 0;
    for i in 1..=n {
        let lead = r1[0];
        if lead == 0 || (lead > 0) != positive {
            return Some(false);
        }
        if i == n {
            break;
        }
        let sign = lead.signum();
        let len = l0 - 1;
        let mut next = [0i128; 16];
        let mut g = 0i128;
        for j in 0..len {
            let x = r1[0]
                .checked_mul(r0[j + 1])?
                .checked_sub(r0[0].checked_mul(r1[j + 1])?)?
                * sign;
            next[j] = x;
            g = gcd_i128(g, x);
        }
        if g > 1 {
            for x in next[..len].iter_mut() {
                *x /= g;
            }
        }
        r0 = r1;
        l0 = l1;
        r1 = next;
        l1 = len;
    }
    Some(true)
}

/// `(1+z)^i (1-z)^(l-i)` for `i = 0..=l`, ascending coefficients.
fn mobius_basis(l: usize) -> std::sync::Arc<Vec<Vec<i128>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, std::sync::Arc<Vec<Vec<i128>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("poisoned").get(&l) {
        return b.clone();
    }
    let mul = |a: &[i128], b: &[i128]| {
        let mut out = vec![0i128; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut basis = Vec::with_capacity(l + 1);
    for i in 0..=l {
        let mut t = vec![1i128];
        for _ in 0..i {
            t = mul(&t, &[1, 1]);
        }
        for _ in 0..l - i {
            t = mul(&t, &[1, -1]);
        }
        basis.push(t);
    }
    let basis = std::sync::Arc::new(basis);
    cache.lock().expect("poisoned").insert(l, basis.clone());
    basis
}

/// Numerator of `q(f(z))` scaled to integers: `sum q_i K^i S^(l-i) (1+z)^i (1-z)^(l-i)`
/// with `k = K/S`.
pub fn mobius_numerator(q: &IntPoly, k: &BigRational) -> Vec<BigInt> {
    let l = q.degree().expect("nonzero polynomial");
    if l > SMALL_BASIS_MAX {
        return mobius_numerator_horner(q, k);
    }
    let basis = mobius_basis(l);
    let (kn, kd) = (k.numer().clone(), k.denom().clone());
    let mut h = vec![BigInt::zero(); l + 1];
    for (i, qi) in q.coeffs().iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        let f = qi * kn.pow(i as u32) * kd.pow((l - i) as u32);
        for (j, t) in basis[i].iter().enumerate() {
            h[j] += &f * BigInt::from(*t);
        }
    }
    h
}

const SMALL_BASIS_MAX: usize = 40;

/// `sum q_i A^i B^(l-i)` with `A = K(1+z)`, `B = S(1-z)`, by homogeneous Horner.
fn mobius_numerator_horner(q: &IntPoly, k: &BigRational) -> Vec<BigInt> {
    let l = q.degree().expect("nonzero polynomial");
    let a = IntPoly::new(vec![k.numer().clone(), k.numer().clone()]);
    let b = IntPoly::new(vec![k.denom().clone(), -k.denom().clone()]);
    let mut acc = IntPoly::constant(q.coeff(l));
    let mut bpow = IntPoly::one();
    for j in 1..=l {
        bpow = &bpow * &b;
        acc = &(&acc * &a) + &bpow.scale(&q.coeff(l - j));
    }
    let mut h = acc.into_coeffs();
    h.resize(l + 1, BigInt::zero());
    h
}

fn mobius_numerator_small(q: &[i64], kn: i128, kd: i128) -> Option<Vec<i128>> {
    let l = q.len() - 1;
    let basis = mobius_basis(l);
    let mut h = vec![0i128; l + 1];
    for (i, &qi) in q.iter().enumerate() {
        if qi == 0 {
            continue;
        }
        let f = (qi as i128)
            .checked_mul(kn.checked_pow(i as u32)?)?
            .checked_mul(kd.checked_pow((l - i) as u32)?)?;
        for (j, &t) in basis[i].iter().enumerate() {
            h[j] = h[j].checked_add(f.checked_mul(t)?)?;
        }
    }
    Some(h)
}

/// True iff every root of `q` lies in the open disk `|z| < k`.
///
/// A root on the circle, and in particular `q(k) = 0` or `q(-k) = 0`, fails.
pub fn disk_filter(q: &IntPoly, k: &BigRational) -> bool {
    assert!(k.is_positive(), "radius must be positive");
    if q.degree() == Some(0) {
        return true;
    }
    if let (Some(small), Some(kn), Some(kd)) = (
        q.to_i64s(),
        num_traits::ToPrimitive::to_i128(k.numer()),
        num_traits::ToPrimitive::to_i128(k.denom()),
    ) {
        if small.len() <= SMALL_BASIS_MAX + 1 {
            if let Some(h) = mobius_numerator_small(&small, kn, kd) {
                if let Some(v) = routh_stable_i128(&h) {
                    return v;
                }
            }
        }
    }
    routh_stable_big(&mobius_numerator(q, k))
}

/// The quick-reject rule in its general form: `q` is rejected only when the
/// transformed numerator keeps its full degree (`q(k) != 0`) and its Routh
/// test fails. A root exactly at `k` therefore slips through.
pub fn disk_prefilter(q: &IntPoly, k: &BigRational) -> bool {
    disk_filter(q, k) || q.eval_rational(k).is_zero()
}

/// The Routh table of the transformed numerator, for inspection.
pub fn disk_table(q: &IntPoly, k: &BigRational) -> RouthTable {
    let h = mobius_numerator(q, k);
    routh_table(&RatPoly::new(h.into_iter().map(BigRational::from_integer).collect()))
}

/// Dyadic upper approximations `ceil(phi 2^s) / 2^s`, decreasing towards the golden ratio.
pub fn golden_dyadic(s: u32) -> BigRational {
    // ceil(phi 2^s) = ceil((2^s + sqrt(5 * 4^s)) / 2)
    let two_s = BigInt::one() << s;
    let r = (BigInt::from(5) * &two_s * &two_s).sqrt();
    let exact = &r * &r == BigInt::from(5) * &two_s * &two_s;
    // phi 2^s = (2^s + sqrt(5) 2^s)/2, with sqrt irrational here
    let root_ceil = if exact { r } else { r + 1 };
    let num = (&two_s + root_ceil + 1) / 2;
    BigRational::new(num, two_s)
}

/// Radii used for the closed golden-disk surrogate: `13/8` followed by three refinements.
pub fn golden_sweep() -> Vec<BigRational> {
    [3u32, 10, 16, 24].iter().map(|&s| golden_dyadic(s)).collect()
}

/// The cubic quick-reject test in reversed (`z -> 1/z`) order with `k = 2`:
/// with `a_3 = q(2)` nonzero, reject when `a_0 a_3 <= 0`, `a_2 a_3 <= 0` or
/// `a_1 a_2 <= a_0 a_3`.
pub fn cubic_quick_reject(q: &IntPoly) -> bool {
    assert_eq!(q.degree(), Some(3), "cubic expected");
    let h = mobius_numerator(q, &BigRational::from_integer(2.into()));
    // reversed order: a_j = h_{3-j}
    let a: Vec<&BigInt> = h.iter().rev().collect();
    let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
    !a3.is_zero() && (!(a0 * a3).is_positive() || !(a2 * a3).is_positive() || a1 * a2 <= a0 * a3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rp(asc: &[i64]) -> RatPoly {
        RatPoly::new(asc.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn table_examples() {
        let t = routh_table(&rp(&[3, 4, 7, 2, 1]));
        assert!(t.defined);
        assert_eq!(
            t.first_column(),
            vec![rat(1, 1), rat(2, 1), rat(5, 1), rat(14, 5), rat(3, 1)]
        );
        assert!(t.is_stable());
        let t = routh_table(&rp(&[3, 4, 7, 0, 1]));
        assert!(!t.defined);
        assert!(!t.is_stable());
        let t = routh_table(&rp(&[1, 1]));
        assert_eq!(t.first_column(), vec![rat(1, 1), rat(1, 1)]);
        assert!(t.is_stable());
    }

    #[test]
    fn integer_paths_agree_with_table() {
        for c in [
            vec![3, 4, 7, 2, 1],
            vec![3, 4, 7, 0, 1],
            vec![1, 1],
            vec![6, 11, 6, 1],
            vec![-6, 11, -6, 1],
            vec![1, 0, 1],
            vec![2, 3, 1, 5, 4, 1],
        ] {
            let p = IntPoly::from_i64s(&c);
            let exact = routh_table(&RatPoly::from(&p)).is_stable();
            let h: Vec<i128> = c.iter().map(|&x| x as i128).collect();
            assert_eq!(routh_stable_i128(&h), Some(exact), "{c:?}");
            assert_eq!(routh_stable_big(p.coeffs()), exact, "{c:?}");
        }
    }

    #[test]
    fn disk_examples() {
        let two = rat(2, 1);
        let cube = IntPoly::from_i64s(&[0, 0, 0, 1]);
        assert_eq!(
            mobius_numerator(&cube, &two).iter().rev().cloned().collect::<Vec<_>>(),
            [8, 24, 24, 8].map(BigInt::from).to_vec()
        );
        assert!(disk_filter(&cube, &two));
        let q = IntPoly::from_i64s(&[1, -3, 1]);
        assert!(!disk_filter(&q, &two));
        assert!(!disk_filter(&q, &rat(13, 8)));
        // root exactly at 2
        assert!(!disk_filter(&IntPoly::from_i64s(&[-2, 1]), &two));
        assert!(disk_filter(&IntPoly::from_i64s(&[1, 1]), &two));
        assert!(disk_filter(&IntPoly::one(), &two));
    }

    #[test]
    fn golden_approximations() {
        assert_eq!(golden_dyadic(3), rat(13, 8));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut prev = f64::INFINITY;
        for k in golden_sweep() {
            let v = num_traits::ToPrimitive::to_f64(&k).unwrap();
            assert!(v > phi && v <= prev);
            prev = v;
        }
        // x^2 - x - 1 has a root exactly at phi
        let g = IntPoly::from_i64s(&[-1, -1, 1]);
        for k in golden_sweep() {
            assert!(disk_filter(&g, &k));
        }
    }
}
