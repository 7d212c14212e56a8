//! Searching for a Salem triple that realizes a candidate co-factor with an
//! exact shape `(m, p)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::system::{lex_feasible, shape_never_minimal, strict_candidate_system, symbolic_digits, Affine, LinearSystem};
use crate::expansion::detect::ExpandConfig;
use crate::expansion::engine::{StateVec, Stepper};
use crate::expansion::{digits_to_companion, exact_shape};
use crate::intpoly::IntPoly;
use crate::salem::{enumerate_by_trace, is_salem, scan_box, SalemStatus, SalemTriple};

/// Where witnesses are looked for: every Salem triple of trace at most
/// `trace`, then every triple with `-radius <= a` inside the candidate's
/// feasibility region (with `b`, `c` limited by the Salem coefficient box).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBox {
    pub trace: i64,
    pub radius: i64,
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox {
            trace: 15,
            radius: 120,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(SalemTriple),
    /// The region was searched exhaustively without success.
    Refuted,
    Unknown,
}

impl Outcome {
    pub fn witness(&self) -> Option<SalemTriple> {
        match self {
            Outcome::Found(t) => Some(*t),
            _ => None,
        }
    }
}

fn cached_enumeration(trace: i64) -> &'static [SalemTriple] {
    static TRACE15: OnceLock<Vec<SalemTriple>> = OnceLock::new();
    if trace == 15 {
        TRACE15.get_or_init(|| enumerate_by_trace(15))
    } else {
        // other sizes are rare; leak a fresh list
        Box::leak(enumerate_by_trace(trace).into_boxed_slice())
    }
}

/// Co-factors of every low-trace Salem triple whose expansion has shape `(m, p)`.
#[derive(Clone, Debug)]
pub struct WitnessIndex {
    m: usize,
    p: usize,
    trace: i64,
    by_cofactor: HashMap<IntPoly, SalemTriple>,
}

impl WitnessIndex {
    pub fn build(m: usize, p: usize, search: &SearchBox) -> Self {
        let eps = ExpandConfig::default().eps;
        let triples = cached_enumeration(search.trace);
        let found: Vec<Option<(IntPoly, SalemTriple)>> = triples
            .par_iter()
            .map(|t| {
                let poly = t.poly();
                let e = exact_shape(&poly, &eps, m, p).ok()??;
                let q = digits_to_companion(&e).divexact(&poly).ok()?;
                Some((q, *t))
            })
            .collect();
        let mut by_cofactor = HashMap::new();
        for (q, t) in found.into_iter().flatten() {
            by_cofactor.entry(q).or_insert(t);
        }
        WitnessIndex {
            m,
            p,
            trace: search.trace,
            by_cofactor,
        }
    }

    pub fn cofactors(&self) -> impl Iterator<Item = (&IntPoly, &SalemTriple)> {
        self.by_cofactor.iter()
    }

    pub fn find(&self, q: &IntPoly, search: &SearchBox) -> Outcome {
        if let Some(t) = self.by_cofactor.get(q) {
            return Outcome::Found(*t);
        }
        region_search(q, self.m, self.p, self.trace, search.radius)
    }
}

/// Does the expansion of `t` have exactly the digits `expected` and shape `(m, p)`?
fn realizes(t: &SalemTriple, expected: &[i64], m: usize) -> bool {
    let eps = ExpandConfig::default().eps;
    let Ok(mut stepper) = Stepper::new(&t.poly(), &eps) else {
        return false;
    };
    let n = expected.len();
    let mut state = StateVec::one(6);
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut at_m = None;
    for (i, &want) in expected.iter().enumerate() {
        if state.is_zero() || !seen.insert(state.clone()) {
            return false;
        }
        if i == m {
            at_m = Some(state.clone());
        }
        match stepper.advance(&state, i as u64 + 1) {
            Ok((next, d)) if d as i64 == want => state = next,
            _ => return false,
        }
    }
    if m == n {
        state.is_zero()
    } else {
        at_m == Some(state)
    }
}

fn region_search(q: &IntPoly, m: usize, p: usize, skip_trace: i64, radius: i64) -> Outcome {
    let sys = strict_candidate_system(q, m, p);
    let qs = q.to_i64s().expect("small candidate");
    let digits: Vec<Affine> = symbolic_digits(&qs, m, p);
    if shape_never_minimal(&digits, m, p) || !lex_feasible(&sys, &digits, m, p) {
        return Outcome::Refuted;
    }
    for a in (-radius..=1).rev() {
        if -a <= skip_trace {
            continue;
        }
        if let Some(t) = search_slice(&sys, &digits, a, m) {
            return Outcome::Found(t);
        }
    }
    // exhaustive when no rational point has a < -radius
    let below = sys.clone().with(Affine::new(-1, 0, 0, -radius - 1));
    if lex_feasible(&below, &digits, m, p) {
        Outcome::Unknown
    } else {
        Outcome::Refuted
    }
}

fn search_slice(sys: &LinearSystem, digits: &[Affine], a: i64, m: usize) -> Option<SalemTriple> {
    let (bw, cw) = scan_box(a);
    for b in -bw..=bw {
        let Some((lo, hi)) = sys.c_range(a, b, -cw, cw) else {
            continue;
        };
        for c in lo..=hi {
            if is_salem(a, b, c) != SalemStatus::CertifiedSalem {
                continue;
            }
            let t = SalemTriple::new(a, b, c);
            let expected: Vec<i64> = digits.iter().map(|d| d.eval(a, b, c)).collect();
            if realizes(&t, &expected, m) {
                return Some(t);
            }
        }
    }
    None
}

/// First triple in the search box realizing `q` with exact shape `(m, p)`.
pub fn witness_search(q: &IntPoly, m: usize, p: usize, search: &SearchBox) -> Option<SalemTriple> {
    WitnessIndex::build(m, p, search).find(q, search).witness()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realizes_matches_expand() {
        let t = SalemTriple::new(-3, -1, -1);
        assert!(realizes(&t, &[3, 1, 1, 1, 2, 2], 1));
        assert!(!realizes(&t, &[3, 1, 1, 1, 2, 2, 1], 1));
        assert!(!realizes(&t, &[3, 1, 1, 1, 2], 1));
    }
}
