//! Two parametric families of sextic Salem numbers: `(a, a+1, -2)` with
//! bounded expansion length but unbounded heuristic constant, and
//! `(a, -2a, 2a-3)`, `a = -6k-3`, whose period `8k+6` grows without bound.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::expansion::{expand, parry_check, verify_expansion, ExpandConfig, ExpandOutcome, Expansion};
use crate::intpoly::IntPoly;
use crate::salem::{heuristic_constant, is_salem, Decimal, SalemStatus, SalemTriple};

/// Steps allowed when checking a family member; its expansions are short.
pub const FAMILY_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("k must be at least 2, got {0}")]
    SmallK(u64),
    #[error("a must be even and at most -2, got {0}")]
    BadTrace(i64),
}

/// `(a, -2a, 2a-3)` with `a = -6k-3`, together with its predicted expansion
/// `(m, p) = (1, 8k+6)` and co-factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargePeriodFamily {
    pub k: u64,
    pub triple: SalemTriple,
    pub expansion: Expansion,
    pub cofactor: IntPoly,
}

fn family_triple(a: i64) -> SalemTriple {
    SalemTriple::new(a, -2 * a, 2 * a - 3)
}

/// `6, 6, 6, 9, ..., 6(k-2), 6(k-2), 6(k-2), 6(k-2)+3`.
fn omega(k: u64) -> Vec<u64> {
    (1..k.saturating_sub(1))
        .flat_map(|j| [6 * j, 6 * j, 6 * j, 6 * j + 3])
        .collect()
}

/// The predicted digits `c_1 .. c_{8k+7}`.
pub fn predicted_digits(k: u64) -> Vec<u64> {
    let s = 6 * k;
    let t = 6 * (k - 1);
    let w1 = omega(k);
    let w2: Vec<u64> = w1.iter().rev().copied().collect();
    let mut d = vec![s, s - 2, s, 2];
    d.extend(&w1);
    d.extend([t, t, t, s - 2, 0, 2, 1, 1, 2, 0, s - 2, t, t, t]);
    d.extend(&w2);
    d.extend([2, s, s - 2, s - 1, s - 1]);
    d
}

/// Reciprocal co-factor of degree `8k+1`: from the top, the integers up to
/// `6k` congruent to 1, 3, 5 or 0 mod 6, then `6k` again, mirrored.
pub fn predicted_cofactor(k: u64) -> IntPoly {
    let half = 4 * k as usize;
    let deg = 2 * half + 1;
    let mut q = vec![0i64; deg + 1];
    for (i, slot) in q.iter_mut().enumerate().take(half) {
        let (m, r) = ((i / 4) as i64, i % 4);
        *slot = 6 * m + [1, 3, 5, 6][r];
    }
    q[half] = 6 * k as i64;
    for i in half + 1..=deg {
        q[i] = q[deg - i];
    }
    IntPoly::from_i64s(&q)
}

pub fn large_period_instance(k: u64) -> Result<LargePeriodFamily, FamilyError> {
    if k < 2 {
        return Err(FamilyError::SmallK(k));
    }
    let a = -6 * k as i64 - 3;
    let p = 8 * k as usize + 6;
    Ok(LargePeriodFamily {
        k,
        triple: family_triple(a),
        expansion: Expansion::new(1, p, predicted_digits(k)),
        cofactor: predicted_cofactor(k),
    })
}

/// Outcome of checking one member of the large-period family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargePeriodCheck {
    pub k: u64,
    pub triple: SalemTriple,
    pub salem: bool,
    pub observed_shape: Option<(u64, u64)>,
    pub digits_match: bool,
    pub cofactor_match: bool,
    pub product_pattern: bool,
    /// First point where prediction and computation part ways.
    pub mismatch: Option<String>,
}

impl LargePeriodCheck {
    pub fn passed(&self) -> bool {
        self.salem && self.digits_match && self.cofactor_match && self.product_pattern
    }
}

/// Coefficient of `x^i` in `P Q` for `6 <= i < 4k`: `-6m+3` at `i = 4m`, else `-6m`.
fn product_pattern(i: usize) -> i64 {
    let m = (i / 4) as i64;
    if i % 4 == 0 {
        -6 * m + 3
    } else {
        -6 * m
    }
}

fn first_digit_mismatch(want: &[u64], got: &[u64]) -> Option<String> {
    if want.len() != got.len() {
        return Some(format!("digit count {} != predicted {}", got.len(), want.len()));
    }
    want.iter()
        .zip(got)
        .position(|(w, g)| w != g)
        .map(|i| format!("digit c_{} = {} != predicted {}", i + 1, got[i], want[i]))
}

pub fn verify_large_period(k: u64) -> Result<LargePeriodCheck, FamilyError> {
    let fam = large_period_instance(k)?;
    let t = fam.triple;
    let poly = t.poly();
    let mut check = LargePeriodCheck {
        k,
        triple: t,
        salem: t.status() == SalemStatus::CertifiedSalem,
        observed_shape: None,
        digits_match: false,
        cofactor_match: false,
        product_pattern: false,
        mismatch: None,
    };
    let note = |check: &mut LargePeriodCheck, s: String| {
        check.mismatch.get_or_insert(s);
    };
    if !check.salem {
        note(&mut check, format!("{t} is not certified Salem"));
    }

    let config = ExpandConfig {
        max_steps: FAMILY_STEP_BUDGET,
        ..ExpandConfig::default()
    };
    match expand(&poly, &config) {
        Ok(ExpandOutcome::Periodic { shape, expansion, .. }) => {
            check.observed_shape = Some((shape.m, shape.p));
            if let Some(e) = expansion {
                check.digits_match = e == fam.expansion;
                if !check.digits_match {
                    let why = if (e.m, e.p) != (fam.expansion.m, fam.expansion.p) {
                        format!("shape ({}, {}) != predicted ({}, {})", e.m, e.p, 1, 8 * k + 6)
                    } else {
                        first_digit_mismatch(&fam.expansion.digits, &e.digits).unwrap_or_default()
                    };
                    note(&mut check, why);
                }
                match verify_expansion(&poly, &e) {
                    Ok(cert) => {
                        check.cofactor_match = cert.q == fam.cofactor;
                        if !check.cofactor_match {
                            let i = (0..=cert.q.degree().unwrap_or(0).max(8 * k as usize + 1))
                                .find(|&i| cert.q.coeff(i) != fam.cofactor.coeff(i))
                                .unwrap_or(0);
                            note(
                                &mut check,
                                format!(
                                    "co-factor coefficient of x^{i} is {} != predicted {}",
                                    cert.q.coeff(i),
                                    fam.cofactor.coeff(i)
                                ),
                            );
                        }
                    }
                    Err(err) => note(&mut check, err.to_string()),
                }
            }
        }
        Ok(ExpandOutcome::BudgetExhausted(r)) => {
            note(&mut check, format!("no period within {} steps", r.steps));
        }
        Err(err) => note(&mut check, err.to_string()),
    }

    let r = &poly * &fam.cofactor;
    let bad = (6..4 * k as usize).find(|&i| r.coeff(i) != BigInt::from(product_pattern(i)));
    check.product_pattern = bad.is_none();
    if let Some(i) = bad {
        note(
            &mut check,
            format!("product coefficient r_{i} = {} != {}", r.coeff(i), product_pattern(i)),
        );
    }
    Ok(check)
}

/// Largest absolute coefficient.
pub fn max_abs_coefficient(q: &IntPoly) -> BigInt {
    q.coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// `(a, a+1, -2)` for even `a <= -2`: expansion length `m + p = 6` while
/// the heuristic constant grows without bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeTraceFamily {
    pub a: i64,
    pub triple: SalemTriple,
    /// The trace cubic is Eisenstein at 2.
    pub eisenstein: bool,
    pub salem: bool,
    pub expansion: Option<Expansion>,
    pub heuristic: Option<Decimal>,
}

impl LargeTraceFamily {
    pub fn length(&self) -> Option<usize> {
        self.expansion.as_ref().map(|e| e.m + e.p)
    }

    pub fn passed(&self) -> bool {
        self.eisenstein && self.salem && self.length() == Some(6)
    }
}

/// Eisenstein's criterion at the prime `p`.
pub fn is_eisenstein(poly: &IntPoly, p: i64) -> bool {
    let p = BigInt::from(p);
    let Some(n) = poly.degree() else {
        return false;
    };
    let c = poly.coeffs();
    let divides = |x: &BigInt| (x % &p).is_zero();
    !divides(&c[n]) && c[..n].iter().all(divides) && !divides(&(&c[0] / &p))
}

pub fn large_trace_instance(a: i64) -> Result<LargeTraceFamily, FamilyError> {
    if a > -2 || a % 2 != 0 {
        return Err(FamilyError::BadTrace(a));
    }
    let triple = SalemTriple::new(a, a + 1, -2);
    let poly = triple.poly();
    let config = ExpandConfig {
        max_steps: FAMILY_STEP_BUDGET,
        ..ExpandConfig::default()
    };
    let expansion = match expand(&poly, &config) {
        Ok(ExpandOutcome::Periodic { expansion, .. }) => expansion,
        _ => None,
    };
    Ok(LargeTraceFamily {
        a,
        triple,
        eisenstein: is_eisenstein(&triple.trace_cubic(), 2),
        salem: is_salem(triple.a, triple.b, triple.c) == SalemStatus::CertifiedSalem,
        expansion,
        heuristic: heuristic_constant(&triple),
    })
}

/// One row of the `a = -6k-4` / `a = -6k-5` exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantRow {
    pub k: u64,
    pub triple: SalemTriple,
    pub status: SalemStatus,
    pub shape: Option<(u64, u64)>,
    /// Lower bound on `m + p` when the step budget ran out.
    pub lower_bound: Option<u64>,
}

impl VariantRow {
    pub fn matches_prediction(&self) -> bool {
        self.shape == Some((1, 8 * self.k + 6))
    }
}

impl fmt::Display for VariantRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let obs = match (self.shape, self.lower_bound) {
            (Some((m, p)), _) => format!("(m,p)=({m},{p})"),
            (None, Some(n)) => format!("m+p>{n}"),
            (None, None) => "not expanded".to_string(),
        };
        write!(
            f,
            "k={} {} {:?} {} predicted=(1,{}) {}",
            self.k,
            self.triple,
            self.status,
            obs,
            8 * self.k + 6,
            if self.matches_prediction() { "match" } else { "differs" }
        )
    }
}

/// Expand `(a, -2a, 2a-3)` for `a = -6k + offset` and compare with `(1, 8k+6)`.
pub fn scan_family_variants(ks: &[u64], offset: i64, max_steps: u64) -> Vec<VariantRow> {
    ks.par_iter()
        .map(|&k| {
            let triple = family_triple(-6 * k as i64 + offset);
            let status = is_salem(triple.a, triple.b, triple.c);
            let mut row = VariantRow {
                k,
                triple,
                status,
                shape: None,
                lower_bound: None,
            };
            if status == SalemStatus::CertifiedSalem {
                let config = ExpandConfig {
                    max_steps,
                    ..ExpandConfig::default()
                };
                match expand(&triple.poly(), &config) {
                    Ok(ExpandOutcome::Periodic { shape, .. }) => row.shape = Some((shape.m, shape.p)),
                    Ok(ExpandOutcome::BudgetExhausted(r)) => row.lower_bound = Some(r.bound()),
                    Err(_) => {}
                }
            }
            row
        })
        .collect()
}

/// Parry's condition on the predicted digits of the large-period family.
pub fn predicted_digits_are_admissible(k: u64) -> bool {
    large_period_instance(k).is_ok_and(|f| parry_check(&f.expansion))
}
