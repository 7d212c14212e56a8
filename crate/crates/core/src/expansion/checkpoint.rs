//! Plain-text checkpoint files.
//!
//! ```text
//! SALEMBETA-CKPT v1
//! P <ascending coefficients>
//! interval <n>
//! eps <decimal>
//! ckpt <n> <b_0> ... <b_{d-1}>
//! record <n> <L>
//! ```
//!
//! `ckpt` and `record` lines are appended as the run progresses; a reader keeps
//! every `ckpt` and the last `record`.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use num_bigint::BigInt;
use thiserror::Error;

use super::detect::CheckpointSink;
use super::engine::{EngineState, Record, StateVec};
use crate::intpoly::IntPoly;

pub const MAGIC: &str = "SALEMBETA-CKPT v1";

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Corrupt { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckpointFile {
    pub poly: IntPoly,
    pub interval: u64,
    pub eps: String,
    pub checkpoints: BTreeMap<u64, StateVec>,
    pub record: Option<Record>,
}

impl CheckpointFile {
    /// Engine state at the latest checkpoint.
    pub fn to_state(&self) -> EngineState {
        let (&n, last) = self
            .checkpoints
            .iter()
            .next_back()
            .expect("reader guarantees a step-0 checkpoint");
        let record = self
            .record
            .clone()
            .filter(|r| r.index <= n)
            .unwrap_or(Record {
                index: 0,
                value: BigInt::from(1),
            });
        EngineState {
            n,
            bcoeffs: last.clone(),
            record,
            checkpoints: self.checkpoints.clone(),
        }
    }
}

pub fn write_header<W: Write>(w: &mut W, poly: &IntPoly, interval: u64, eps: &str) -> io::Result<()> {
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "P {}", poly.ascending_string())?;
    writeln!(w, "interval {interval}")?;
    writeln!(w, "eps {eps}")?;
    writeln!(w, "ckpt 0 {}", join(&StateVec::one(poly.degree().unwrap_or(1)).to_big()))?;
    Ok(())
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
}

/// Appends checkpoint and record lines to a writer.
pub struct CheckpointWriter<W: Write> {
    out: W,
}

impl<W: Write> CheckpointWriter<W> {
    pub fn new(out: W) -> Self {
        CheckpointWriter { out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> CheckpointSink for CheckpointWriter<W> {
    fn checkpoint(&mut self, n: u64, state: &StateVec, record: &Record) -> io::Result<()> {
        writeln!(self.out, "ckpt {n} {}", join(&state.to_big()))?;
        writeln!(self.out, "record {} {}", record.index, record.value)?;
        self.out.flush()
    }
}

pub fn read_checkpoint<R: BufRead>(input: R) -> Result<CheckpointFile, CheckpointError> {
    let mut poly = None;
    let mut interval = None;
    let mut eps = None;
    let mut checkpoints = BTreeMap::new();
    let mut record = None;
    let corrupt = |line: usize, msg: &str| CheckpointError::Corrupt {
        line,
        msg: msg.to_string(),
    };
    let ints = |line: usize, parts: &[&str]| -> Result<Vec<BigInt>, CheckpointError> {
        parts
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| corrupt(line, "bad integer")))
            .collect()
    };
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let no = i + 1;
        if i == 0 {
            if line.trim() != MAGIC {
                return Err(corrupt(no, "missing header"));
            }
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.split_first() {
            None => continue,
            Some((&"P", rest)) => poly = Some(IntPoly::new(ints(no, rest)?)),
            Some((&"interval", [v])) => {
                interval = Some(v.parse().map_err(|_| corrupt(no, "bad interval"))?)
            }
            Some((&"eps", [v])) => eps = Some(v.to_string()),
            Some((&"ckpt", rest)) if !rest.is_empty() => {
                let n: u64 = rest[0].parse().map_err(|_| corrupt(no, "bad step"))?;
                let coeffs = ints(no, &rest[1..])?;
                checkpoints.insert(n, StateVec::from_big(coeffs));
            }
            Some((&"record", [n, v])) => {
                record = Some(Record {
                    index: n.parse().map_err(|_| corrupt(no, "bad step"))?,
                    value: v.parse().map_err(|_| corrupt(no, "bad integer"))?,
                })
            }
            _ => return Err(corrupt(no, "unrecognized line")),
        }
    }
    let poly = poly.ok_or_else(|| corrupt(0, "missing P line"))?;
    let deg = poly.degree().filter(|&d| d >= 2).ok_or_else(|| corrupt(0, "bad polynomial"))?;
    if checkpoints.values().any(|s| s.len() != deg) {
        return Err(corrupt(0, "checkpoint length does not match degree"));
    }
    if !checkpoints.contains_key(&0) {
        return Err(corrupt(0, "missing step-0 checkpoint"));
    }
    Ok(CheckpointFile {
        poly,
        interval: interval.ok_or_else(|| corrupt(0, "missing interval"))?,
        eps: eps.ok_or_else(|| corrupt(0, "missing eps"))?,
        checkpoints,
        record,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::detect::{ExpandConfig, ExpandOutcome, Expander};
    use crate::salem::SalemTriple;

    #[test]
    fn roundtrip_and_resume() {
        let t = SalemTriple::new(-1, -7, -11);
        let config = ExpandConfig {
            checkpoint_interval: 50,
            max_steps: 1_000_000,
            ..ExpandConfig::default()
        };
        let mut buf = Vec::new();
        write_header(&mut buf, &t.poly(), 50, "5e-64").unwrap();
        let mut writer = CheckpointWriter::new(buf);
        let full = Expander::new(&t.poly(), config.clone())
            .unwrap()
            .run(&mut writer)
            .unwrap();
        let buf = writer.into_inner();
        let file = read_checkpoint(&buf[..]).unwrap();
        assert_eq!(file.poly, t.poly());
        assert_eq!(file.interval, 50);
        let resumed = Expander::resume(&t.poly(), config, file.to_state())
            .unwrap()
            .run(&mut ())
            .unwrap();
        match (full, resumed) {
            (
                ExpandOutcome::Periodic { shape: a, expansion: ea, .. },
                ExpandOutcome::Periodic { shape: b, expansion: eb, .. },
            ) => {
                assert_eq!(a, b);
                assert_eq!(ea, eb);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_checkpoint(&b"hello\n"[..]).is_err());
        let text = format!("{MAGIC}\nP 1 0 1\ninterval 5\neps 1e-9\nckpt 0 1\n");
        assert!(read_checkpoint(text.as_bytes()).is_err());
    }
}
