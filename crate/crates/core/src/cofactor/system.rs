//! Digits of a candidate expansion as affine functions of `(a, b, c)` and the
//! linear inequality systems they must satisfy.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::intpoly::IntPoly;

/// `a*x + b*y + c*z + k` over the unknown coefficients `(x, y, z) = (a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub k: i64,
}

impl Affine {
    pub const fn new(a: i64, b: i64, c: i64, k: i64) -> Self {
        Affine { a, b, c, k }
    }

    pub const fn constant(k: i64) -> Self {
        Affine { a: 0, b: 0, c: 0, k }
    }

    pub fn scale(self, s: i64) -> Self {
        Affine::new(self.a * s, self.b * s, self.c * s, self.k * s)
    }

    pub fn eval(&self, a: i64, b: i64, c: i64) -> i64 {
        self.a * a + self.b * b + self.c * c + self.k
    }

    pub fn is_constant(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }
}

impl Add for Affine {
    type Output = Affine;
    fn add(self, o: Affine) -> Affine {
        Affine::new(self.a + o.a, self.b + o.b, self.c + o.c, self.k + o.k)
    }
}

impl Sub for Affine {
    type Output = Affine;
    fn sub(self, o: Affine) -> Affine {
        self + (-o)
    }
}

impl Neg for Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        self.scale(-1)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (coef, name) in [(self.a, "a"), (self.b, "b"), (self.c, "c"), (self.k, "")] {
            if coef == 0 {
                continue;
            }
            let mag = coef.unsigned_abs();
            let sign = if coef < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let body = match (mag, name) {
                (_, "") => mag.to_string(),
                (1, n) => n.to_string(),
                (m, n) => format!("{m}{n}"),
            };
            out.push_str(sign);
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// The sextic `x^6 + a x^5 + b x^4 + c x^3 + b x^2 + a x + 1` with symbolic coefficients.
pub fn symbolic_sextic() -> [Affine; 7] {
    let one = Affine::constant(1);
    let a = Affine::new(1, 0, 0, 0);
    let b = Affine::new(0, 1, 0, 0);
    let c = Affine::new(0, 0, 1, 0);
    [one, a, b, c, b, a, one]
}

/// Coefficients of `P(x) q(x)`, ascending.
pub fn symbolic_product(q: &[i64]) -> Vec<Affine> {
    let p = symbolic_sextic();
    let mut out = vec![Affine::default(); q.len() + 6];
    for (i, &qi) in q.iter().enumerate() {
        for (j, pj) in p.iter().enumerate() {
            out[i + j] = out[i + j] + pj.scale(qi);
        }
    }
    out
}

/// Digits `c_1 .. c_{m+p}` read off `R = P q` for the shape `(m, p)`.
pub fn symbolic_digits(q: &[i64], m: usize, p: usize) -> Vec<Affine> {
    let r = symbolic_product(q);
    let n = m + p;
    assert_eq!(r.len(), n + 1, "degree of q must be m + p - 6");
    let mut c = vec![Affine::constant(-1); n + 1];
    for i in 1..=n {
        let e = n - i;
        c[i] = if p > 0 && e <= m { c[i - p] - r[e] } else { -r[e] };
    }
    c.remove(0);
    c
}

/// True when the digits `c_1 .. c_{m+p}` repeat with a shorter period, or
/// have a shorter preperiod, for every `(a, b, c)`: such a candidate can never
/// have exact shape `(m, p)`.
pub fn shape_never_minimal(digits: &[Affine], m: usize, p: usize) -> bool {
    if p == 0 {
        return false;
    }
    let block = &digits[m..m + p];
    let shorter_period = (1..p)
        .filter(|d| p % d == 0)
        .any(|d| (0..p - d).all(|j| block[j] == block[j + d]));
    let shorter_preperiod = m > 0 && digits[m - 1] == digits[m + p - 1];
    shorter_period || shorter_preperiod
}

/// Inequalities `f >= 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub inequalities: Vec<Affine>,
}

impl LinearSystem {
    pub fn push(&mut self, f: Affine) {
        self.inequalities.push(f);
    }

    pub fn with(mut self, f: Affine) -> Self {
        self.push(f);
        self
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn satisfied_by(&self, a: i64, b: i64, c: i64) -> bool {
        self.inequalities.iter().all(|f| f.eval(a, b, c) >= 0)
    }

    /// Integer range of `c` for fixed `(a, b)`, or `None` if empty.
    pub fn c_range(&self, a: i64, b: i64, lo: i64, hi: i64) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = (lo, hi);
        for f in &self.inequalities {
            let rest = f.a * a + f.b * b + f.k;
            match f.c.signum() {
                0 if rest < 0 => return None,
                0 => {}
                // f.c * c >= -rest
                1 => lo = lo.max(Integer::div_ceil(&(-rest), &f.c)),
                _ => hi = hi.min(Integer::div_floor(&rest, &(-f.c))),
            }
        }
        (lo <= hi).then_some((lo, hi))
    }
}

/// Systems of nonnegativity (`c_k >= 0`) and the partial Parry condition
/// (`c_1 >= c_k`) for candidate `q` and shape `(m, p)`.
pub fn candidate_system(q: &IntPoly, m: usize, p: usize) -> LinearSystem {
    let qs = q.to_i64s().expect("candidate coefficients fit in i64");
    let digits = symbolic_digits(&qs, m, p);
    let mut sys = LinearSystem::default();
    for d in &digits {
        sys.push(*d);
    }
    for d in &digits[1..] {
        sys.push(digits[0] - *d);
    }
    sys
}

/// Branches of Parry's condition for one shift `k`: the tail starting at
/// `c_{k+1}` is smaller than the sequence when, for some `j`, the first `j`
/// digit forms agree and the next one is smaller. Each branch is a list of
/// inequalities; an empty outer list means the shift can never be satisfied.
fn shift_branches(digits: &[Affine], m: usize, p: usize, k: usize) -> Vec<Vec<Affine>> {
    let n = m + p;
    let zero = Affine::constant(0);
    let symbol = |j: usize| {
        if j < n {
            digits[j]
        } else if p == 0 {
            zero
        } else {
            digits[m + (j - m) % p]
        }
    };
    let window = m + 2 * p.max(1);
    let mut equal: Vec<Affine> = vec![];
    let mut out = vec![];
    for j in 0..window {
        let d = symbol(j) - symbol(k + j);
        if d == zero {
            continue;
        }
        if d.is_constant() {
            if d.k > 0 {
                out.push(equal.clone());
            }
            return out;
        }
        let mut branch = equal.clone();
        branch.push(d - Affine::constant(1));
        out.push(branch);
        equal.push(d);
        equal.push(-d);
    }
    out
}

/// Branch nodes explored before [`lex_feasible`] gives up and answers `true`.
const LEX_NODE_BUDGET: usize = 200_000;

/// Whether `base` together with Parry's full lexicographic condition on the
/// symbolic digits has a rational solution, using strict integer steps
/// (`x > y` as `x >= y + 1`). `false` is a proof of infeasibility; `true` may
/// also mean the branch budget ran out.
pub fn lex_feasible(base: &LinearSystem, digits: &[Affine], m: usize, p: usize) -> bool {
    let n = m + p;
    let mut shifts: Vec<Vec<Vec<Affine>>> = Vec::with_capacity(n);
    for k in 1..=n {
        let b = shift_branches(digits, m, p, k);
        if b.is_empty() {
            return false;
        }
        // unconditional shifts add nothing
        if !b.iter().any(Vec::is_empty) {
            shifts.push(b);
        }
    }
    shifts.sort_by_key(Vec::len);
    let mut nodes = 0usize;
    lex_dfs(base, &shifts, &mut nodes)
}

fn lex_dfs(sys: &LinearSystem, shifts: &[Vec<Vec<Affine>>], nodes: &mut usize) -> bool {
    *nodes += 1;
    if *nodes > LEX_NODE_BUDGET {
        return true;
    }
    if !feasible(sys) {
        return false;
    }
    let Some((first, rest)) = shifts.split_first() else {
        return true;
    };
    first.iter().any(|branch| {
        let mut next = sys.clone();
        for f in branch {
            next.push(*f);
        }
        lex_dfs(&next, rest, nodes)
    })
}

/// [`candidate_system`] with `c_1 >= 1`, the system every realizing triple satisfies.
pub fn strict_candidate_system(q: &IntPoly, m: usize, p: usize) -> LinearSystem {
    let qs = q.to_i64s().expect("candidate coefficients fit in i64");
    let digits = symbolic_digits(&qs, m, p);
    candidate_system(q, m, p).with(digits[0] - Affine::constant(1))
}

/// Inequality over a prefix of the variables, stored with i128 coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Row {
    v: [i128; 3],
    k: i128,
}

impl Row {
    fn normalize(mut self) -> Self {
        let g = self
            .v
            .iter()
            .chain(std::iter::once(&self.k))
            .fold(0i128, |g, &x| g.gcd(&x));
        if g > 1 {
            self.v.iter_mut().for_each(|x| *x /= g);
            self.k /= g;
        }
        self
    }
}

/// Exact rational feasibility by Fourier–Motzkin elimination of `c`, then `b`,
/// then `a`.
pub fn feasible(sys: &LinearSystem) -> bool {
    let mut rows: Vec<Row> = sys
        .inequalities
        .iter()
        .map(|f| {
            Row {
                v: [f.a as i128, f.b as i128, f.c as i128],
                k: f.k as i128,
            }
            .normalize()
        })
        .collect();
    for var in (0..3).rev() {
        let mut pos = vec![];
        let mut neg = vec![];
        let mut seen = HashSet::new();
        let mut next = vec![];
        for r in rows {
            if r.v == [0, 0, 0] {
                if r.k < 0 {
                    return false;
                }
                continue;
            }
            match r.v[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => {
                    if seen.insert(r) {
                        next.push(r);
                    }
                }
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (p.v[var], -n.v[var]);
                let mut v = [0i128; 3];
                for i in 0..3 {
                    v[i] = p.v[i] * sn + n.v[i] * sp;
                }
                let r = Row {
                    v,
                    k: p.k * sn + n.k * sp,
                }
                .normalize();
                if r.v == [0, 0, 0] {
                    if r.k < 0 {
                        return false;
                    }
                    continue;
                }
                if seen.insert(r) {
                    next.push(r);
                }
            }
        }
        rows = next;
    }
    rows.iter().all(|r| r.k >= 0)
}

/// Digit forms of `q` as printed in expansion notation.
pub fn digits_string(q: &IntPoly, m: usize, p: usize) -> String {
    let qs: Vec<i64> = q
        .coeffs()
        .iter()
        .map(|x| x.to_i64().expect("small coefficients"))
        .collect();
    let d = symbolic_digits(&qs, m, p);
    let join = |s: &[Affine]| s.iter().map(Affine::to_string).collect::<Vec<_>>().join(", ");
    format!("{} : {}", join(&d[..m]), join(&d[m..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_block_is_never_minimal() {
        // P (x^5 + 1) splits into two equal halves of the period
        assert!(shape_never_minimal(&symbolic_digits(&[1, 0, 0, 0, 0, 1], 1, 10), 1, 10));
        assert!(!shape_never_minimal(&symbolic_digits(&[1, 1, -1, -1, 1, 1], 1, 10), 1, 10));
        assert!(!shape_never_minimal(&symbolic_digits(&[1, 0, 1], 1, 7), 1, 7));
    }

    #[test]
    fn digits_for_x2_plus_1() {
        let q = IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(
            digits_string(&q, 1, 7),
            "-a : -b-1, -a-c, -2b, -a-c, -b-1, -a-1, -a-1"
        );
    }

    #[test]
    fn digits_for_x5_plus_1() {
        let q = IntPoly::from_i64s(&[1, 0, 0, 0, 0, 1]);
        assert_eq!(
            digits_string(&q, 1, 10),
            "-a : -b, -c, -b, -a-1, -a-1, -b, -c, -b, -a-1, -a-1"
        );
    }

    #[test]
    fn digits_for_constant_one() {
        assert_eq!(
            digits_string(&IntPoly::one(), 1, 5),
            "-a : -b, -c, -b, -a-1, -a-1"
        );
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasible(&LinearSystem::default()));
        assert!(feasible(&candidate_system(&IntPoly::from_i64s(&[1, 0, 1]), 1, 7)));
        // x >= 1 and x <= 0
        let s = LinearSystem::default()
            .with(Affine::new(1, 0, 0, -1))
            .with(Affine::new(-1, 0, 0, 0));
        assert!(!feasible(&s));
        // a + b >= 3, a <= 1, b <= 1
        let s = LinearSystem::default()
            .with(Affine::new(1, 1, 0, -3))
            .with(Affine::new(-1, 0, 0, 1))
            .with(Affine::new(0, -1, 0, 1));
        assert!(!feasible(&s));
        // the same with a + b >= 2 touches a single point
        let s = LinearSystem::default()
            .with(Affine::new(1, 1, 0, -2))
            .with(Affine::new(-1, 0, 0, 1))
            .with(Affine::new(0, -1, 0, 1));
        assert!(feasible(&s));
    }

    #[test]
    fn restricted_system_for_x2_minus_x_plus_1() {
        // with a <= -1 the digit c_2 = a - b - 1 >= 0 clashes with the rest
        let q = IntPoly::from_i64s(&[1, -1, 1]);
        let digits = symbolic_digits(&[1, -1, 1], 1, 7);
        assert_eq!(digits[1], Affine::new(1, -1, 0, -1));
        let s = candidate_system(&q, 1, 7).with(Affine::new(-1, 0, 0, -1));
        let region_points = (-30..=-1)
            .flat_map(|a| (-60..=60).flat_map(move |b| (-90..=90).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| s.satisfied_by(a, b, c))
            .count();
        assert_eq!(feasible(&s), region_points > 0);
    }

    #[test]
    fn c_range_matches_brute_force() {
        let s = candidate_system(&IntPoly::from_i64s(&[1, 0, 1]), 1, 7);
        for a in -8..0 {
            for b in -20..5 {
                let brute: Vec<i64> = (-60..60).filter(|&c| s.satisfied_by(a, b, c)).collect();
                match s.c_range(a, b, -60, 59) {
                    Some((lo, hi)) => assert_eq!(brute, (lo..=hi).collect::<Vec<_>>()),
                    None => assert!(brute.is_empty()),
                }
            }
        }
    }
}
