use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter};
use std::path::Path;

use anyhow::{anyhow, Context};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use salembeta::cofactor::{minimal_cofactor_set, CofactorCandidate, CofactorReport, PipelineConfig};
use salembeta::expansion::checkpoint::{read_checkpoint, write_header, CheckpointWriter};
use salembeta::expansion::engine::parse_eps;
use salembeta::expansion::{verify_expansion, ExpandConfig, ExpandOutcome, Expander};
use salembeta::families::{large_period_instance, large_trace_instance, scan_family_variants, verify_large_period};
use salembeta::intpoly::IntPoly;
use salembeta::salem::{heuristic_constant, refine_beta, Decimal, SalemStatus, SalemTriple};
use salembeta::tables::long_expansion_rows;

use crate::output::{csv, expansion_notation, Out};
use crate::{Cli, Command, FamilyCommand, TableCommand, EXIT_BUDGET, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE};

/// Digits shown before `--full-digits` is needed.
pub const DISPLAY_CAP: usize = 10_000;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl Failure {
    pub fn code(&self) -> u8 {
        self.code
    }

    fn usage(err: anyhow::Error) -> Self {
        Failure { code: EXIT_USAGE, err }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.err)
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            err: e.into(),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn run(cli: &Cli) -> Result<u8> {
    let eps = parse_eps(&cli.run.eps)
        .filter(|e| e > &BigRational::from_integer(0.into()))
        .ok_or_else(|| Failure::usage(anyhow!("--eps must be a positive decimal, got {:?}", cli.run.eps)))?;
    let config = ExpandConfig {
        eps,
        checkpoint_interval: cli.run.checkpoint_interval,
        ..ExpandConfig::default()
    };
    let mut out = Out::new(cli.run.format.into());
    let code = match &cli.command {
        Command::Check { a, b, c } => check(&mut out, SalemTriple::new(*a, *b, *c))?,
        Command::Expand {
            a,
            b,
            c,
            max_steps,
            state_file,
            full_digits,
        } => {
            let config = ExpandConfig {
                max_steps: *max_steps,
                ..config
            };
            let cap = (!full_digits).then_some(DISPLAY_CAP);
            expand(
                &mut out,
                SalemTriple::new(*a, *b, *c),
                config,
                state_file.as_deref(),
                &cli.run.eps,
                cap,
            )?
        }
        Command::Cofactors { m, p } => cofactors(&mut out, *m, *p)?,
        Command::Table(TableCommand::Lambda { pmin, pmax }) => lambda_table(&mut out, *pmin, *pmax)?,
        Command::Table(TableCommand::Largeexp { max_trace, max_steps }) => {
            let config = ExpandConfig {
                max_steps: *max_steps,
                ..config
            };
            largeexp_table(&mut out, *max_trace, &config)?
        }
        Command::Family(FamilyCommand::LargePeriod { k, kmax }) => large_period(&mut out, *k, kmax.unwrap_or(*k))?,
        Command::Family(FamilyCommand::LargeTrace { a, amin }) => large_trace(&mut out, *a, amin.unwrap_or(*a))?,
        Command::Family(FamilyCommand::VariantScan {
            offset,
            kmin,
            kmax,
            max_steps,
        }) => variant_scan(&mut out, *offset, *kmin, *kmax, *max_steps)?,
    };
    out.flush()?;
    Ok(code)
}

fn status_name(s: SalemStatus) -> &'static str {
    match s {
        SalemStatus::CertifiedSalem => "salem",
        SalemStatus::CertifiedNotSalem => "not-salem",
    }
}

/// `beta` truncated to `places` decimals, refining until both ends of the
/// enclosure agree.
fn beta_decimal(t: &SalemTriple, places: u32) -> Decimal {
    let mut digits = places + 4;
    loop {
        let eps = BigRational::new(1.into(), BigInt::from(10).pow(digits));
        let enc = refine_beta(t, &eps);
        let lo = Decimal::from_rational(&enc.lo, places);
        if lo == Decimal::from_rational(&enc.hi, places) {
            return lo;
        }
        digits += 8;
    }
}

fn check(out: &mut Out, t: SalemTriple) -> Result<u8> {
    let status = t.status();
    let disc = t.poly().discriminant();
    let salem = status == SalemStatus::CertifiedSalem;
    let beta = salem.then(|| beta_decimal(&t, 10));
    let heuristic = if salem { heuristic_constant(&t).map(|h| h.truncate(4)) } else { None };
    let excluded = salembeta::cofactor::cyclotomic_excluded(&t);
    let opt = |d: &Option<Decimal>| d.as_ref().map_or("-".to_string(), Decimal::to_string);

    out.human(format!("{t}: {}", status_name(status)))?;
    if let Some(b) = &beta {
        out.human(format!("beta {b}"))?;
    }
    out.human(format!("trace {}", t.trace()))?;
    out.human(format!("disc {disc}"))?;
    if let Some(h) = &heuristic {
        out.human(format!("C(beta) {h}"))?;
    }
    out.human(format!("cyclotomic_excluded {excluded}"))?;

    out.tsv(&["a", "b", "c", "status", "beta", "trace", "disc", "C", "cyclotomic_excluded"])?;
    out.tsv(&[
        t.a.to_string(),
        t.b.to_string(),
        t.c.to_string(),
        status_name(status).to_string(),
        opt(&beta),
        t.trace().to_string(),
        disc.to_string(),
        opt(&heuristic),
        excluded.to_string(),
    ])?;
    out.json(json!({
        "a": t.a, "b": t.b, "c": t.c,
        "status": status_name(status),
        "beta": beta.map(|b| b.to_string()),
        "trace": t.trace(),
        "disc": disc.to_string(),
        "heuristic_constant": heuristic.map(|h| h.to_string()),
        "cyclotomic_excluded": excluded,
    }))?;
    Ok(EXIT_OK)
}

fn open_expander(
    t: &SalemTriple,
    config: ExpandConfig,
    state_file: Option<&Path>,
    eps_text: &str,
) -> Result<(Expander, Option<CheckpointWriter<BufWriter<File>>>)> {
    let poly = t.poly();
    let Some(path) = state_file else {
        return Ok((Expander::new(&poly, config)?, None));
    };
    let resumable = path.metadata().map(|m| m.len() > 0).unwrap_or(false);
    if resumable {
        let bad = |e: anyhow::Error| Failure::usage(e.context(format!("cannot resume from {}", path.display())));
        let file = read_checkpoint(BufReader::new(File::open(path)?)).map_err(|e| bad(e.into()))?;
        if file.poly != poly {
            return Err(bad(anyhow!("state file belongs to {}", file.poly)));
        }
        if file.eps != eps_text {
            return Err(bad(anyhow!("state file was written with --eps {}", file.eps)));
        }
        let config = ExpandConfig {
            checkpoint_interval: file.interval,
            ..config
        };
        let expander = Expander::resume(&poly, config, file.to_state())?;
        let f = OpenOptions::new().append(true).open(path)?;
        Ok((expander, Some(CheckpointWriter::new(BufWriter::new(f)))))
    } else {
        let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        write_header(&mut w, &poly, config.checkpoint_interval, eps_text)?;
        Ok((Expander::new(&poly, config)?, Some(CheckpointWriter::new(w))))
    }
}

fn expand(
    out: &mut Out,
    t: SalemTriple,
    config: ExpandConfig,
    state_file: Option<&Path>,
    eps_text: &str,
    cap: Option<usize>,
) -> Result<u8> {
    if !t.is_salem() {
        return Err(Failure::usage(anyhow!("{t} is not a Salem polynomial")));
    }
    let (mut expander, writer) = open_expander(&t, config, state_file, eps_text)?;
    let outcome = match writer {
        Some(mut w) => expander.run(&mut w)?,
        None => expander.run(&mut ())?,
    };
    let ends = [t.a.to_string(), t.b.to_string(), t.c.to_string()];
    out.tsv(&["a", "b", "c", "m", "p", "bound", "record", "digits"])?;
    match outcome {
        ExpandOutcome::Periodic {
            shape,
            expansion,
            record,
            steps,
        } => {
            out.human(format!("{t}"))?;
            out.human(format!("m={} p={}", shape.m, shape.p))?;
            let mut cofactor = None;
            if let Some(e) = &expansion {
                out.human(format!("digits {}", expansion_notation(&e.digits, e.m, cap)))?;
                let cert = verify_expansion(&t.poly(), e)
                    .map_err(|err| anyhow!("expansion failed verification: {err}"))?;
                let disk = format!("{:?}", cert.disk).to_lowercase();
                out.human(format!(
                    "cofactor degree={} disk={disk}",
                    cert.q.degree().unwrap_or(0)
                ))?;
                cofactor = Some((cert.q.degree().unwrap_or(0), disk));
            } else {
                out.human("digits not materialized")?;
            }
            out.human(format!("record {} at n={}", record.value, record.index))?;
            let digits = expansion.as_ref().map(|e| {
                let shown = cap.map_or(e.digits.len(), |c| c.min(e.digits.len()));
                &e.digits[..shown]
            });
            out.tsv(&[
                ends[0].clone(),
                ends[1].clone(),
                ends[2].clone(),
                shape.m.to_string(),
                shape.p.to_string(),
                "-".to_string(),
                record.value.to_string(),
                digits.map_or("-".to_string(), csv),
            ])?;
            out.json(json!({
                "a": t.a, "b": t.b, "c": t.c,
                "status": "periodic",
                "m": shape.m, "p": shape.p,
                "steps": steps,
                "digits": digits,
                "digits_truncated": expansion.as_ref().map(|e| digits.map_or(0, <[u64]>::len) < e.digits.len()),
                "cofactor_degree": cofactor.as_ref().map(|c| c.0),
                "disk": cofactor.map(|c| c.1),
                "record_index": record.index,
                "record_value": record.value.to_string(),
            }))?;
            Ok(EXIT_OK)
        }
        ExpandOutcome::BudgetExhausted(r) => {
            out.human(format!("{t}"))?;
            out.human(format!("m+p > {}", r.bound()))?;
            out.human(format!("record {} at n={}", r.record_value, r.record_index))?;
            out.human(format!("steps {}", r.steps))?;
            out.tsv(&[
                ends[0].clone(),
                ends[1].clone(),
                ends[2].clone(),
                "*".to_string(),
                "*".to_string(),
                r.bound().to_string(),
                r.record_value.to_string(),
                "-".to_string(),
            ])?;
            out.json(json!({
                "a": t.a, "b": t.b, "c": t.c,
                "status": "budget_exhausted",
                "bound": r.bound(),
                "steps": r.steps,
                "record_index": r.record_index,
                "record_value": r.record_value.to_string(),
            }))?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn candidate_json(kind: &str, c: &CofactorCandidate) -> Value {
    json!({
        "status": kind,
        "q": c.q.to_i64s(),
        "disk": c.disk.to_string(),
        "feas": c.feasible.to_string(),
        "witness": c.witness.map(|t| [t.a, t.b, t.c]),
    })
}

fn check_shape(m: usize, p: usize) -> Result<()> {
    if m + p < 6 {
        return Err(Failure::usage(anyhow!("m + p must be at least 6")));
    }
    if m != 1 || !(5..=10).contains(&p) {
        eprintln!("note: ({m}, {p}) is outside the certified range m = 1, 5 <= p <= 10");
    }
    Ok(())
}

fn cofactors(out: &mut Out, m: usize, p: usize) -> Result<u8> {
    check_shape(m, p)?;
    let report = minimal_cofactor_set(m, p, &PipelineConfig::default());
    let n = &report.counts;
    out.human(format!(
        "({m}, {p}): box {} | disk {} | tight disk {} | golden disk {} | roots {} | feasible {} | confirmed {}",
        n.boxed, n.disk, n.disk_tight, n.golden, n.roots, n.feasible, n.confirmed
    ))?;
    out.tsv(&["status", "q", "disk", "feas", "witness"])?;
    for (kind, list) in [
        ("confirmed", &report.confirmed),
        ("refuted", &report.refuted),
        ("unresolved", &report.unresolved),
    ] {
        out.human(format!("{kind}: {}", list.len()))?;
        for c in list {
            out.human(c.to_string())?;
            let w = c.witness.map_or("none".to_string(), |t| format!("{},{},{}", t.a, t.b, t.c));
            out.tsv(&[
                kind.to_string(),
                c.q.ascending_string(),
                c.disk.to_string(),
                c.feasible.to_string(),
                w,
            ])?;
            out.json(candidate_json(kind, c))?;
        }
    }
    Ok(if report.unresolved.is_empty() { EXIT_OK } else { EXIT_BUDGET })
}

/// Co-factors by descending coefficients, highest degree first.
fn table_order(list: &[CofactorCandidate]) -> Vec<IntPoly> {
    let mut qs: Vec<IntPoly> = list.iter().map(|c| c.q.clone()).collect();
    qs.sort_by(|x, y| x.coeffs().iter().rev().cmp(y.coeffs().iter().rev()));
    qs
}

fn lambda_table(out: &mut Out, pmin: usize, pmax: usize) -> Result<u8> {
    if pmin < 5 || pmin > pmax {
        return Err(Failure::usage(anyhow!("need 5 <= pmin <= pmax")));
    }
    let mut code = EXIT_OK;
    out.human("p\tLambda(6, 1, p)")?;
    out.tsv(&["p", "cofactor"])?;
    for p in pmin..=pmax {
        let report: CofactorReport = minimal_cofactor_set(1, p, &PipelineConfig::default());
        let rows = table_order(&report.confirmed);
        for (i, q) in rows.iter().enumerate() {
            let label = if i == 0 { p.to_string() } else { String::new() };
            out.human(format!("{label}\t{q}"))?;
            out.tsv(&[p.to_string(), q.to_string()])?;
            out.json(json!({"p": p, "cofactor": q.to_string(), "coeffs": q.to_i64s(), "status": "confirmed"}))?;
        }
        for q in table_order(&report.unresolved) {
            code = EXIT_BUDGET;
            out.human(format!("\t{q} (unresolved)"))?;
            out.tsv(&[p.to_string(), format!("{q} ?")])?;
            out.json(json!({"p": p, "cofactor": q.to_string(), "coeffs": q.to_i64s(), "status": "unresolved"}))?;
        }
    }
    Ok(code)
}

fn largeexp_table(out: &mut Out, max_trace: i64, config: &ExpandConfig) -> Result<u8> {
    let rows = long_expansion_rows(max_trace, config)?;
    out.human(format!("{:<20} {:>12} {:>12} {:>14}", "(a, b, c)", "m", "p", "m+p >"))?;
    out.tsv(&["a,b,c", "m", "p", "m+p>"])?;
    for r in rows {
        let t = r.triple;
        let (m, p, bound) = match (r.shape, r.lower_bound) {
            (Some(s), _) => (s.m.to_string(), s.p.to_string(), "N/A".to_string()),
            (None, Some(n)) => ("*".to_string(), "*".to_string(), n.to_string()),
            (None, None) => ("*".to_string(), "*".to_string(), "-".to_string()),
        };
        out.human(format!("{:<20} {m:>12} {p:>12} {bound:>14}", t.to_string()))?;
        out.tsv(&[format!("{},{},{}", t.a, t.b, t.c), m, p, bound])?;
        out.json(json!({
            "a": t.a, "b": t.b, "c": t.c,
            "m": r.shape.map(|s| s.m),
            "p": r.shape.map(|s| s.p),
            "bound": r.lower_bound,
        }))?;
    }
    Ok(EXIT_OK)
}

fn large_period(out: &mut Out, kmin: u64, kmax: u64) -> Result<u8> {
    if kmin < 2 || kmin > kmax {
        return Err(Failure::usage(anyhow!("need 2 <= k <= kmax")));
    }
    let mut code = EXIT_OK;
    out.tsv(&["k", "a,b,c", "predicted", "observed", "digits", "cofactor", "product", "result"])?;
    for k in kmin..=kmax {
        let fam = large_period_instance(k).map_err(|e| Failure::usage(e.into()))?;
        let c = verify_large_period(k).map_err(|e| Failure::usage(e.into()))?;
        let t = c.triple;
        let predicted = format!("(1,{})", fam.expansion.p);
        let observed = c.observed_shape.map_or("-".to_string(), |(m, p)| format!("({m},{p})"));
        let word = |b: bool| if b { "match" } else { "differs" };
        let result = if c.passed() { "pass" } else { "fail" };
        if !c.passed() {
            code = EXIT_INTERNAL;
        }
        out.human(format!(
            "k={k} {t} predicted {predicted} observed {observed} digits={} cofactor={} product={}: {result}",
            word(c.digits_match),
            word(c.cofactor_match),
            word(c.product_pattern)
        ))?;
        if let Some(why) = &c.mismatch {
            out.human(format!("  first mismatch: {why}"))?;
            eprintln!("k={k}: {why}");
        }
        out.tsv(&[
            k.to_string(),
            format!("{},{},{}", t.a, t.b, t.c),
            predicted.clone(),
            observed.clone(),
            word(c.digits_match).to_string(),
            word(c.cofactor_match).to_string(),
            word(c.product_pattern).to_string(),
            result.to_string(),
        ])?;
        out.json(json!({
            "k": k, "a": t.a, "b": t.b, "c": t.c,
            "predicted": [1, fam.expansion.p],
            "observed": c.observed_shape.map(|(m, p)| [m, p]),
            "digits_match": c.digits_match,
            "cofactor_match": c.cofactor_match,
            "product_pattern": c.product_pattern,
            "mismatch": c.mismatch,
            "pass": c.passed(),
        }))?;
    }
    Ok(code)
}

fn large_trace(out: &mut Out, a: i64, amin: i64) -> Result<u8> {
    if amin > a {
        return Err(Failure::usage(anyhow!("--amin must not exceed --a")));
    }
    let mut code = EXIT_OK;
    out.tsv(&["a,b,c", "m+p", "C", "eisenstein", "result"])?;
    let mut x = a;
    while x >= amin {
        let f = large_trace_instance(x).map_err(|e| Failure::usage(e.into()))?;
        let t = f.triple;
        let len = f.length().map_or("-".to_string(), |n| n.to_string());
        let h = f.heuristic.as_ref().map_or("-".to_string(), |h| h.truncate(4).to_string());
        let result = if f.passed() { "pass" } else { "fail" };
        if !f.passed() {
            code = EXIT_INTERNAL;
            eprintln!("{t}: m+p = {len}, expected 6");
        }
        out.human(format!("{t} m+p={len} C(beta)={h} eisenstein={}: {result}", f.eisenstein))?;
        out.tsv(&[format!("{},{},{}", t.a, t.b, t.c), len.clone(), h.clone(), f.eisenstein.to_string(), result.to_string()])?;
        out.json(json!({
            "a": t.a, "b": t.b, "c": t.c,
            "length": f.length(),
            "heuristic_constant": f.heuristic.as_ref().map(|h| h.truncate(4).to_string()),
            "eisenstein": f.eisenstein,
            "pass": f.passed(),
        }))?;
        x -= 2;
    }
    Ok(code)
}

fn variant_scan(out: &mut Out, offset: i64, kmin: u64, kmax: u64, max_steps: u64) -> Result<u8> {
    let ks: Vec<u64> = (kmin..=kmax).collect();
    out.tsv(&["k", "a,b,c", "status", "observed", "predicted", "match"])?;
    for r in scan_family_variants(&ks, offset, max_steps) {
        let t = r.triple;
        let observed = match (r.shape, r.lower_bound) {
            (Some((m, p)), _) => format!("({m},{p})"),
            (None, Some(n)) => format!("m+p>{n}"),
            (None, None) => "-".to_string(),
        };
        out.human(r.to_string())?;
        out.tsv(&[
            r.k.to_string(),
            format!("{},{},{}", t.a, t.b, t.c),
            status_name(r.status).to_string(),
            observed,
            format!("(1,{})", 8 * r.k + 6),
            r.matches_prediction().to_string(),
        ])?;
        out.json(json!({
            "k": r.k, "a": t.a, "b": t.b, "c": t.c,
            "status": status_name(r.status),
            "observed": r.shape.map(|(m, p)| [m, p]),
            "bound": r.lower_bound,
            "match": r.matches_prediction(),
        }))?;
    }
    Ok(EXIT_OK)
}
