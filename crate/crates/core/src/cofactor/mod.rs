//! Co-factor candidates `Q` with `R = P Q`, their filters, and the minimal
//! co-factor sets for degree-six Salem numbers with a given shape `(m, p)`.

pub mod routh;
pub mod system;
pub mod witness;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::intpoly::{cauchy_root_bound, IntPoly, SturmChain};
use crate::salem::SalemTriple;

pub use routh::{disk_filter, disk_prefilter, golden_dyadic, golden_sweep, routh_table, RouthTable};
pub use system::{candidate_system, feasible, Affine, LinearSystem};
pub use witness::{witness_search, SearchBox, WitnessIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorCandidate {
    pub q: IntPoly,
    pub disk: Verdict,
    pub feasible: Verdict,
    pub witness: Option<SalemTriple>,
}

impl CofactorCandidate {
    pub fn new(q: IntPoly) -> Self {
        CofactorCandidate {
            q,
            disk: Verdict::Skipped,
            feasible: Verdict::Skipped,
            witness: None,
        }
    }
}

impl fmt::Display for CofactorCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match &self.witness {
            Some(t) => format!("{},{},{}", t.a, t.b, t.c),
            None => "none".to_string(),
        };
        write!(
            f,
            "Q {} | disk={} feas={} witness={}",
            self.q.ascending_string(),
            self.disk,
            self.feasible,
            w
        )
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `floor(n * phi^k)` exactly: `phi^k = (L_k + F_k sqrt 5) / 2`.
fn floor_times_phi_pow(n: u64, k: u32) -> i64 {
    let (mut f0, mut f1) = (0i128, 1i128); // F_0, F_1
    let (mut l0, mut l1) = (2i128, 1i128); // L_0, L_1
    for _ in 0..k {
        (f0, f1) = (f1, f0 + f1);
        (l0, l1) = (l1, l0 + l1);
    }
    // floor(n (L + F sqrt5) / 2) with sqrt(5 F^2 n^2) irrational unless F = 0
    let n = n as i128;
    let s = BigInt::from(5 * f0 * f0 * n * n).sqrt();
    let s = s.to_i128().expect("small");
    let exact = f0 == 0;
    // n F sqrt5 lies in (s, s+1) when not exact
    let lo = n * l0 + s;
    if exact {
        (lo / 2) as i64
    } else {
        // floor((lo + theta)/2) for theta in (0,1)
        (lo.div_euclid(2)) as i64
    }
}

/// Inclusive ranges `[lo_j, hi_j]` for the coefficients `d_0 .. d_{l-1}` of a
/// monic degree-`l` candidate.
pub fn box_ranges(l: usize, m: usize) -> Vec<(i64, i64)> {
    let lu = l as u64;
    let mut ranges = Vec::with_capacity(l);
    for j in 0..l {
        // d_j = d_{l-k} with k = l - j
        let k = (l - j) as u32;
        let bound = floor_times_phi_pow(binom(lu, k as u64), k);
        let (mut lo, mut hi) = (-bound, bound);
        if k == 1 && m == 1 {
            lo = lo.max(-4);
            hi = hi.min(5);
        }
        if j == 0 && m == 1 {
            lo = lo.max(0);
        }
        ranges.push((lo, hi));
    }
    ranges
}

/// Number of candidates in the coefficient box.
pub fn box_size(n: usize, m: usize, p: usize) -> u128 {
    assert!(m + p > n || (m + p == n), "m + p must be at least the degree");
    box_ranges(m + p - n, m)
        .iter()
        .map(|(lo, hi)| (hi - lo + 1).max(0) as u128)
        .product()
}

/// Every candidate co-factor in the coefficient box, in lexicographic order
/// of `(d_{l-1}, .., d_0)`.
pub fn candidate_box(n: usize, m: usize, p: usize) -> impl Iterator<Item = CofactorCandidate> {
    let l = m + p - n;
    let ranges = box_ranges(l, m);
    BoxIter::new(ranges).map(|d| {
        let mut c = d;
        c.push(1);
        CofactorCandidate::new(IntPoly::from_i64s(&c))
    })
}

/// Odometer over a product of ranges; the last coordinate turns slowest.
#[derive(Clone, Debug)]
pub struct BoxIter {
    ranges: Vec<(i64, i64)>,
    cur: Option<Vec<i64>>,
}

impl BoxIter {
    pub fn new(ranges: Vec<(i64, i64)>) -> Self {
        let cur = if ranges.iter().all(|(lo, hi)| lo <= hi) {
            Some(ranges.iter().map(|r| r.0).collect())
        } else {
            None
        };
        BoxIter { ranges, cur }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().expect("checked");
        let mut i = 0;
        loop {
            if i == cur.len() {
                self.cur = None;
                break;
            }
            if cur[i] < self.ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = self.ranges[i].0;
            i += 1;
        }
        Some(out)
    }
}

/// Box candidates (ascending coefficient vectors, monic) passing `keep`,
/// scanned in parallel over slices of the two top coefficients.
pub fn filter_box<F>(l: usize, m: usize, keep: F) -> Vec<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let ranges = box_ranges(l, m);
    if l < 2 {
        return BoxIter::new(ranges)
            .map(|mut d| {
                d.push(1);
                d
            })
            .filter(|d| keep(d))
            .collect();
    }
    let (top, rest) = (ranges[l - 2..].to_vec(), ranges[..l - 2].to_vec());
    let prefixes: Vec<Vec<i64>> = BoxIter::new(top).collect();
    let mut parts: Vec<(Vec<i64>, Vec<Vec<i64>>)> = prefixes
        .into_par_iter()
        .map(|pre| {
            let mut found = vec![];
            let mut buf = vec![0i64; l + 1];
            buf[l] = 1;
            buf[l - 2] = pre[0];
            buf[l - 1] = pre[1];
            for low in BoxIter::new(rest.clone()) {
                buf[..l - 2].copy_from_slice(&low);
                if keep(&buf) {
                    found.push(buf.clone());
                }
            }
            (vec![pre[1], pre[0]], found)
        })
        .collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<Vec<i64>> = parts.into_iter().flat_map(|p| p.1).collect();
    out.sort_by(|x, y| x.iter().rev().cmp(y.iter().rev()));
    out
}

/// Fast disk test on a small coefficient vector.
pub fn disk_filter_small(q: &[i64], k: &BigRational) -> bool {
    disk_filter(&IntPoly::from_i64s(q), k)
}

/// [`disk_prefilter`] on a small coefficient vector.
pub fn disk_prefilter_small(q: &[i64], k: &BigRational) -> bool {
    disk_prefilter(&IntPoly::from_i64s(q), k)
}

/// True when `Q` has no positive real root.
pub fn m1_no_positive_roots_check(q: &IntPoly) -> bool {
    if q.degree().unwrap_or(0) == 0 {
        return true;
    }
    let sf = q.squarefree_part();
    // strip roots at zero
    let lead_zeros = sf.coeffs().iter().take_while(|c| c.is_zero()).count();
    let sf = IntPoly::new(sf.coeffs()[lead_zeros..].to_vec());
    if sf.degree().unwrap_or(0) == 0 {
        return true;
    }
    let chain = SturmChain::new(&sf).expect("squarefree");
    chain.count_above(&BigRational::zero()) == 0
}

/// A Salem polynomial with `b <= 2a - 3` has no cyclotomic co-factor.
pub fn cyclotomic_excluded(t: &SalemTriple) -> bool {
    t.b <= 2 * t.a - 3
}

/// Constraint a co-factor places on the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodConstraint {
    None,
    AtLeast(u64),
}

impl PeriodConstraint {
    pub fn admits(&self, p: u64) -> bool {
        match self {
            PeriodConstraint::None => true,
            PeriodConstraint::AtLeast(k) => p >= *k,
        }
    }
}

/// A reciprocal co-factor forces `p >= 3`. Constants are treated as reciprocal.
pub fn reciprocal_cofactor_min_period(q: &IntPoly) -> PeriodConstraint {
    if q.is_reciprocal() {
        PeriodConstraint::AtLeast(3)
    } else {
        PeriodConstraint::None
    }
}

/// Counts of candidates surviving each stage.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageCounts {
    pub boxed: u128,
    /// Survivors of the quick-reject rule at the outer radius.
    pub disk: usize,
    pub disk_tight: usize,
    /// Tight survivors that also pass the last radius of [`golden_sweep`].
    pub golden: usize,
    pub roots: usize,
    pub feasible: usize,
    pub confirmed: usize,
}

#[derive(Clone, Debug, Default)]
pub struct CofactorReport {
    pub m: usize,
    pub p: usize,
    pub confirmed: Vec<CofactorCandidate>,
    pub unresolved: Vec<CofactorCandidate>,
    /// Candidates that passed the filters but were refuted by an exhaustive search.
    pub refuted: Vec<CofactorCandidate>,
    pub counts: StageCounts,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub disk_radius: BigRational,
    pub tight_radius: BigRational,
    pub search: SearchBox,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            disk_radius: BigRational::from_integer(2.into()),
            tight_radius: golden_dyadic(3),
            search: SearchBox::default(),
        }
    }
}

/// The minimal co-factor set for degree-six Salem numbers with shape `(m, p)`.
pub fn minimal_cofactor_set(m: usize, p: usize, config: &PipelineConfig) -> CofactorReport {
    const N: usize = 6;
    assert!(m + p >= N, "shape too short for a sextic");
    let l = m + p - N;
    let mut counts = StageCounts {
        boxed: box_size(N, m, p),
        ..StageCounts::default()
    };
    let survivors = filter_box(l, m, |q| disk_prefilter_small(q, &config.disk_radius));
    counts.disk = survivors.len();
    let tight: Vec<IntPoly> = survivors
        .par_iter()
        .filter(|q| disk_filter_small(q, &config.tight_radius))
        .map(|q| IntPoly::from_i64s(q))
        .collect();
    counts.disk_tight = tight.len();
    let closest = golden_sweep().pop().expect("nonempty sweep");
    counts.golden = tight.par_iter().filter(|q| disk_filter(q, &closest)).count();
    let period_ok = |q: &IntPoly| reciprocal_cofactor_min_period(q).admits(p as u64);
    let rooted: Vec<IntPoly> = tight
        .into_iter()
        .filter(|q| (m != 1 || m1_no_positive_roots_check(q)) && period_ok(q))
        .collect();
    counts.roots = rooted.len();
    let feasible_set: Vec<IntPoly> = rooted
        .into_par_iter()
        .filter(|q| feasible(&candidate_system(q, m, p)))
        .collect();
    counts.feasible = feasible_set.len();
    let index = WitnessIndex::build(m, p, &config.search);
    let results: Vec<(CofactorCandidate, witness::Outcome)> = feasible_set
        .into_par_iter()
        .map(|q| {
            let outcome = index.find(&q, &config.search);
            let cand = CofactorCandidate {
                witness: outcome.witness(),
                q,
                disk: Verdict::Pass,
                feasible: Verdict::Pass,
            };
            (cand, outcome)
        })
        .collect();
    let mut report = CofactorReport {
        m,
        p,
        ..CofactorReport::default()
    };
    for (cand, outcome) in results {
        match outcome {
            witness::Outcome::Found(_) => report.confirmed.push(cand),
            witness::Outcome::Refuted => report.refuted.push(cand),
            witness::Outcome::Unknown => report.unresolved.push(cand),
        }
    }
    counts.confirmed = report.confirmed.len();
    report.counts = counts;
    report
}

/// Candidates of the `(m, p)` box whose roots all lie in `|z| < k`, for each `k`.
pub fn disk_counts(m: usize, p: usize, radii: &[BigRational]) -> Vec<usize> {
    let l = m + p - 6;
    let mut current = filter_box(l, m, |q| disk_filter_small(q, &radii[0]));
    let mut out = vec![current.len()];
    for k in &radii[1..] {
        current.retain(|q| disk_filter_small(q, k));
        out.push(current.len());
    }
    out
}

/// Upper bound for a real root search of `q`.
pub fn root_bound(q: &IntPoly) -> BigInt {
    cauchy_root_bound(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_examples() {
        assert_eq!(box_size(6, 1, 10), 37_301_400);
        assert_eq!(
            box_ranges(5, 1),
            vec![(0, 11), (-34, 34), (-42, 42), (-26, 26), (-4, 5)]
        );
        assert_eq!(box_size(6, 1, 7), 21);
        let deg1: Vec<String> = candidate_box(6, 1, 6).map(|c| c.q.to_string()).collect();
        assert_eq!(deg1, vec!["x", "x + 1"]);
        assert_eq!(candidate_box(6, 1, 5).count(), 1);
    }

    #[test]
    fn phi_power_floors() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for n in 1..30u64 {
            for k in 0..12u32 {
                let f = (n as f64 * phi.powi(k as i32)).floor() as i64;
                assert_eq!(floor_times_phi_pow(n, k), f, "{n} {k}");
            }
        }
    }

    #[test]
    fn box_iter_order() {
        let v: Vec<Vec<i64>> = BoxIter::new(vec![(0, 1), (-1, 0)]).collect();
        assert_eq!(v, vec![vec![0, -1], vec![1, -1], vec![0, 0], vec![1, 0]]);
        assert_eq!(BoxIter::new(vec![(1, 0)]).count(), 0);
    }

    #[test]
    fn filter_box_matches_iterator() {
        let all: Vec<Vec<i64>> = candidate_box(6, 1, 9)
            .map(|c| c.q.to_i64s().unwrap())
            .filter(|q| q[1] % 3 == 0)
            .collect();
        let fast = filter_box(4, 1, |q| q[1] % 3 == 0);
        assert_eq!(all, fast);
    }

    #[test]
    fn positive_root_examples() {
        assert!(m1_no_positive_roots_check(&IntPoly::from_i64s(&[1, 2, 1])));
        assert!(!m1_no_positive_roots_check(&IntPoly::from_i64s(&[2, -3, 1])));
        assert!(m1_no_positive_roots_check(&IntPoly::from_i64s(&[1, -1, 1, -1, 1])));
        assert!(m1_no_positive_roots_check(&IntPoly::from_i64s(&[0, 1])));
    }

    #[test]
    fn cyclotomic_exclusion_examples() {
        assert!(cyclotomic_excluded(&SalemTriple::new(-6, -26, -39)));
        assert!(!cyclotomic_excluded(&SalemTriple::new(-3, -1, -7)));
        assert!(!cyclotomic_excluded(&SalemTriple::new(-1, 0, -1)));
    }

    #[test]
    fn reciprocal_period_examples() {
        let c = reciprocal_cofactor_min_period(&IntPoly::from_i64s(&[1, 0, 1]));
        assert!(!c.admits(2));
        assert!(c.admits(7));
        assert_eq!(
            reciprocal_cofactor_min_period(&IntPoly::from_i64s(&[0, 1, 1])),
            PeriodConstraint::None
        );
        assert!(reciprocal_cofactor_min_period(&IntPoly::one()).admits(5));
    }

    #[test]
    fn report_line_format() {
        let mut c = CofactorCandidate::new(IntPoly::one());
        c.disk = Verdict::Pass;
        c.feasible = Verdict::Pass;
        c.witness = Some(SalemTriple::new(-1, 0, -1));
        assert_eq!(c.to_string(), "Q 1 | disk=pass feas=pass witness=-1,0,-1");
    }
}
