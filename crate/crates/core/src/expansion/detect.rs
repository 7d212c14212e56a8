//! Running the engine until the state sequence repeats, then locating the
//! preperiod from the stored checkpoints.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::engine::{parse_eps, EngineError, EngineState, Record, StateVec, Stepper};
use super::Expansion;
use crate::intpoly::IntPoly;

pub const DEFAULT_CHECKPOINT_INTERVAL: u64 = 10_000_000;
pub const DEFAULT_DIGIT_CAP: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct ExpandConfig {
    /// Initial width of the rational enclosure of beta.
    pub eps: BigRational,
    pub checkpoint_interval: u64,
    /// Stop after this many digits without a repeat.
    pub max_steps: u64,
    /// Largest `m + p` for which digits are materialized in the result.
    pub digit_cap: usize,
}

impl Default for ExpandConfig {
    fn default() -> Self {
        ExpandConfig {
            eps: parse_eps("5e-64").expect("valid literal"),
            checkpoint_interval: DEFAULT_CHECKPOINT_INTERVAL,
            max_steps: 1 << 32,
            digit_cap: DEFAULT_DIGIT_CAP,
        }
    }
}

/// Preperiod and period of an expansion whose digits may not be materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParryShape {
    pub m: u64,
    pub p: u64,
}

/// What is known when the step budget runs out: `m + p > record_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub steps: u64,
    pub record_index: u64,
    pub record_value: BigInt,
}

impl LowerBoundReport {
    /// Strict lower bound on `m + p`.
    pub fn bound(&self) -> u64 {
        self.record_index
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandOutcome {
    Periodic {
        shape: ParryShape,
        /// Present when `m + p` does not exceed the digit cap.
        expansion: Option<Expansion>,
        record: Record,
        steps: u64,
    },
    BudgetExhausted(LowerBoundReport),
}

/// Checkpoint notifications emitted while running.
pub trait CheckpointSink {
    fn checkpoint(&mut self, n: u64, state: &StateVec, record: &Record) -> std::io::Result<()>;
}

impl CheckpointSink for () {
    fn checkpoint(&mut self, _: u64, _: &StateVec, _: &Record) -> std::io::Result<()> {
        Ok(())
    }
}

/// Stateful driver around [`Stepper`] that tracks records, checkpoints and
/// the reference states used to spot a repeat.
pub struct Expander {
    stepper: Stepper,
    config: ExpandConfig,
    state: EngineState,
    head: Vec<u64>,
    head_complete: bool,
}

impl Expander {
    pub fn new(poly: &IntPoly, config: ExpandConfig) -> Result<Self, EngineError> {
        let stepper = Stepper::new(poly, &config.eps)?;
        let state = EngineState::initial(stepper.degree());
        Ok(Expander {
            stepper,
            config,
            state,
            head: Vec::new(),
            head_complete: true,
        })
    }

    /// Continue from a restored state; digits before `state.n` are regenerated on demand.
    pub fn resume(poly: &IntPoly, config: ExpandConfig, state: EngineState) -> Result<Self, EngineError> {
        let stepper = Stepper::new(poly, &config.eps)?;
        if state.bcoeffs.len() != stepper.degree() {
            return Err(EngineError::Internal("state length does not match degree".into()));
        }
        let head_complete = state.n == 0;
        Ok(Expander {
            stepper,
            config,
            state,
            head: Vec::new(),
            head_complete,
        })
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    pub fn run(&mut self, sink: &mut dyn CheckpointSink) -> Result<ExpandOutcome, EngineError> {
        let interval = self.config.checkpoint_interval.max(1);
        let cap = self.config.digit_cap as u64;
        let mut ckpt_ref = self
            .state
            .checkpoints
            .iter()
            .next_back()
            .map(|(&n, s)| (n, s.clone()))
            .unwrap_or_else(|| (self.state.n, self.state.bcoeffs.clone()));
        // the doubling reference sits at the last power of two, as in an uninterrupted run
        let (mut brent_ref, mut brent_next) = if self.state.n == 0 {
            ((0, self.state.bcoeffs.clone()), 1)
        } else {
            let at = 1u64 << (63 - self.state.n.leading_zeros());
            let (&from, s) = self
                .state
                .checkpoints
                .range(..=at)
                .next_back()
                .ok_or_else(|| EngineError::Internal("checkpoint at step 0 missing".into()))?;
            let s = s.clone();
            ((at, run_steps(&mut self.stepper, &s, from, at - from)?), at * 2)
        };
        let mut current = self.state.bcoeffs.clone();
        let mut n = self.state.n;
        let found = loop {
            if current.is_zero() {
                break Some((n, 0));
            }
            if n >= self.config.max_steps {
                break None;
            }
            let (next, digit) = self.stepper.advance(&current, n + 1)?;
            n += 1;
            current = next;
            if self.head_complete && n <= cap {
                self.head.push(digit);
            }
            let trailing = current.trailing();
            if trailing.magnitude() > self.state.record.value.magnitude() {
                self.state.record = Record {
                    index: n,
                    value: trailing.magnitude().clone().into(),
                };
            }
            if current == ckpt_ref.1 {
                break Some((ckpt_ref.0, n - ckpt_ref.0));
            }
            if current == brent_ref.1 {
                break Some((brent_ref.0, n - brent_ref.0));
            }
            if n % interval == 0 {
                self.state.checkpoints.insert(n, current.clone());
                sink.checkpoint(n, &current, &self.state.record)
                    .map_err(|e| EngineError::Internal(format!("checkpoint write failed: {e}")))?;
                ckpt_ref = (n, current.clone());
            }
            if n == brent_next {
                brent_ref = (n, current.clone());
                brent_next *= 2;
            }
        };
        self.state.n = n;
        self.state.bcoeffs = current.clone();
        let Some((reference, p)) = found else {
            return Ok(ExpandOutcome::BudgetExhausted(LowerBoundReport {
                steps: n,
                record_index: self.state.record.index,
                record_value: self.state.record.value.clone(),
            }));
        };
        let m = if p == 0 {
            n
        } else {
            let mut ckpts = self.state.checkpoints.clone();
            ckpts.insert(reference, current);
            detect_preperiod_with(&mut self.stepper, &ckpts, p, reference)?
        };
        let shape = ParryShape { m, p };
        let len = m + p;
        let expansion = if len <= cap {
            let digits = if self.head_complete && (self.head.len() as u64) >= len {
                self.head[..len as usize].to_vec()
            } else {
                regenerate(&mut self.stepper, len)?
            };
            Some(Expansion::new(m as usize, p as usize, digits))
        } else {
            None
        };
        Ok(ExpandOutcome::Periodic {
            shape,
            expansion,
            record: self.state.record.clone(),
            steps: n,
        })
    }
}

fn regenerate(stepper: &mut Stepper, len: u64) -> Result<Vec<u64>, EngineError> {
    let mut state = StateVec::one(stepper.degree());
    let mut digits = Vec::with_capacity(len as usize);
    for n in 1..=len {
        let (next, d) = stepper.advance(&state, n)?;
        digits.push(d);
        state = next;
    }
    Ok(digits)
}

fn run_steps(
    stepper: &mut Stepper,
    state: &StateVec,
    from: u64,
    count: u64,
) -> Result<StateVec, EngineError> {
    let mut s = state.clone();
    for i in 0..count {
        s = stepper.advance(&s, from + i + 1)?.0;
    }
    Ok(s)
}

/// Expand the greedy expansion of 1 in base `beta`, the dominant root of `poly`.
pub fn expand(poly: &IntPoly, config: &ExpandConfig) -> Result<ExpandOutcome, EngineError> {
    Expander::new(poly, config.clone())?.run(&mut ())
}

/// The first `len` digits.
pub fn materialize_digits(
    poly: &IntPoly,
    eps: &BigRational,
    len: u64,
) -> Result<Vec<u64>, EngineError> {
    let mut stepper = Stepper::new(poly, eps)?;
    regenerate(&mut stepper, len)
}

/// The expansion if its shape is exactly `(m, p)`, decided from the first
/// `m + p` states alone.
pub fn exact_shape(
    poly: &IntPoly,
    eps: &BigRational,
    m: usize,
    p: usize,
) -> Result<Option<Expansion>, EngineError> {
    let mut stepper = Stepper::new(poly, eps)?;
    exact_shape_with(&mut stepper, m, p)
}

pub(crate) fn exact_shape_with(
    stepper: &mut Stepper,
    m: usize,
    p: usize,
) -> Result<Option<Expansion>, EngineError> {
    let n = m + p;
    if n == 0 {
        return Ok(None);
    }
    let mut state = StateVec::one(stepper.degree());
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut at_m = None;
    let mut digits = Vec::with_capacity(n);
    for i in 0..n {
        if state.is_zero() || !seen.insert(state.clone()) {
            return Ok(None);
        }
        if i == m {
            at_m = Some(state.clone());
        }
        let (next, d) = stepper.advance(&state, i as u64 + 1)?;
        digits.push(d);
        state = next;
    }
    let closes = if p == 0 {
        state.is_zero()
    } else {
        at_m.as_ref() == Some(&state)
    };
    Ok(closes.then(|| Expansion::new(m, p, digits)))
}

/// Smallest `n` in `1..=budget` with `B_{start + n} = B_start`.
pub fn detect_period(
    poly: &IntPoly,
    eps: &BigRational,
    start: u64,
    state: &StateVec,
    budget: u64,
) -> Result<Option<u64>, EngineError> {
    let mut stepper = Stepper::new(poly, eps)?;
    let mut s = state.clone();
    for i in 1..=budget {
        s = stepper.advance(&s, start + i)?.0;
        if &s == state {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Smallest `m` with `B_m = B_{m+p}`, using stored states `checkpoints`
/// (which must contain index 0) and an index `reference` known to be periodic.
pub fn detect_preperiod(
    poly: &IntPoly,
    eps: &BigRational,
    checkpoints: &BTreeMap<u64, StateVec>,
    p: u64,
    reference: u64,
) -> Result<u64, EngineError> {
    let mut stepper = Stepper::new(poly, eps)?;
    detect_preperiod_with(&mut stepper, checkpoints, p, reference)
}

fn detect_preperiod_with(
    stepper: &mut Stepper,
    checkpoints: &BTreeMap<u64, StateVec>,
    p: u64,
    reference: u64,
) -> Result<u64, EngineError> {
    let points: Vec<(u64, &StateVec)> = checkpoints
        .range(..=reference)
        .map(|(&n, s)| (n, s))
        .collect();
    if points.first().map(|x| x.0) != Some(0) {
        return Err(EngineError::Internal("checkpoint at step 0 missing".into()));
    }
    let periodic_at = |stepper: &mut Stepper, idx: usize| -> Result<bool, EngineError> {
        let (n, s) = points[idx];
        Ok(&run_steps(stepper, s, n, p)? == s)
    };
    if periodic_at(stepper, 0)? {
        return Ok(0);
    }
    // invariant: points[lo] not periodic, points[hi] periodic
    let (mut lo, mut hi) = (0usize, points.len() - 1);
    if !periodic_at(stepper, hi)? {
        return Err(EngineError::Internal("reference state is not periodic".into()));
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if periodic_at(stepper, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (start, s0) = points[lo];
    let mut a = s0.clone();
    let mut b = run_steps(stepper, s0, start, p)?;
    let mut n = start;
    while a != b {
        a = stepper.advance(&a, n + 1)?.0;
        b = stepper.advance(&b, n + p + 1)?.0;
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{digits_to_companion, parry_check};
    use crate::salem::SalemTriple;

    fn small_config() -> ExpandConfig {
        ExpandConfig {
            checkpoint_interval: 10_000,
            max_steps: 1_000_000,
            ..ExpandConfig::default()
        }
    }

    fn shape_of(t: SalemTriple, config: &ExpandConfig) -> ParryShape {
        match expand(&t.poly(), config).unwrap() {
            ExpandOutcome::Periodic { shape, .. } => shape,
            other => panic!("{t}: {other:?}"),
        }
    }

    #[test]
    fn smallest_salem_number() {
        // Lehmer's number has a short expansion
        let t = SalemTriple::new(-1, 0, -1);
        let out = expand(&t.poly(), &small_config()).unwrap();
        let ExpandOutcome::Periodic { expansion: Some(e), .. } = out else {
            panic!("expected digits")
        };
        assert!(parry_check(&e));
        assert!(digits_to_companion(&e).divexact(&t.poly()).is_ok());
    }

    #[test]
    fn interval_does_not_change_shape() {
        for t in [
            SalemTriple::new(-2, -6, -9),
            SalemTriple::new(-2, 0, -1),
            SalemTriple::new(-1, -7, -11),
        ] {
            let a = shape_of(t, &small_config());
            for interval in [1, 7, 64, 1000] {
                let c = ExpandConfig {
                    checkpoint_interval: interval,
                    ..small_config()
                };
                assert_eq!(shape_of(t, &c), a, "{t} interval {interval}");
            }
        }
    }

    #[test]
    fn exact_shape_agrees_with_expand() {
        let c = small_config();
        for t in crate::salem::enumerate_by_trace(2) {
            let out = expand(&t.poly(), &c).unwrap();
            let ExpandOutcome::Periodic { shape, expansion: Some(e), .. } = out else {
                continue;
            };
            let (m, p) = (shape.m as usize, shape.p as usize);
            assert_eq!(exact_shape(&t.poly(), &c.eps, m, p).unwrap(), Some(e), "{t}");
            if p > 1 {
                assert_eq!(exact_shape(&t.poly(), &c.eps, m, 2 * p).unwrap(), None);
            }
            if m > 0 {
                assert_eq!(exact_shape(&t.poly(), &c.eps, m - 1, p).unwrap(), None);
            }
        }
    }

    #[test]
    fn budget_reports_record() {
        let t = SalemTriple::new(-7, -29, -43);
        let c = ExpandConfig {
            max_steps: 5000,
            ..small_config()
        };
        let ExpandOutcome::BudgetExhausted(r) = expand(&t.poly(), &c).unwrap() else {
            panic!("expansion too short")
        };
        assert_eq!(r.steps, 5000);
        assert!(r.record_index <= 5000 && r.record_index > 0);
    }

    #[test]
    fn detect_helpers_agree_with_expand() {
        let t = SalemTriple::new(-1, -7, -11);
        let c = small_config();
        let ExpandOutcome::Periodic { shape, expansion: Some(e), .. } = expand(&t.poly(), &c).unwrap()
        else {
            panic!()
        };
        let digits = &e.digits[..shape.m as usize];
        let state = StateVec::from_big(
            super::super::engine::naive_state(&t.poly(), digits)
                .coeffs()
                .iter()
                .cloned()
                .chain(std::iter::repeat(0.into()))
                .take(6)
                .collect(),
        );
        let p = detect_period(&t.poly(), &c.eps, shape.m, &state, shape.p + 5).unwrap();
        assert_eq!(p, Some(shape.p));
        let mut ck = BTreeMap::new();
        ck.insert(0, StateVec::one(6));
        ck.insert(shape.m, state);
        assert_eq!(detect_preperiod(&t.poly(), &c.eps, &ck, shape.p, shape.m).unwrap(), shape.m);
    }
}
