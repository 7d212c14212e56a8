use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salembeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_reports_salem_data() {
    let o = run(&["check", "-3", "-1", "-7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("(-3, -1, -7): salem"), "{s}");
    assert!(s.contains("beta 3.78"), "{s}");
    assert!(s.contains("C(beta) 0.3342"), "{s}");
    assert!(s.contains("trace 3"), "{s}");

    let s = stdout(&run(&["check", "0", "0", "0"]));
    assert!(s.contains("not-salem"), "{s}");

    let s = stdout(&run(&["check", "-6", "-26", "-39"]));
    assert!(s.contains("cyclotomic_excluded true"), "{s}");
}

#[test]
fn check_json_mirrors_human_fields() {
    let s = stdout(&run(&["check", "-3", "-1", "-7", "--format", "json-lines"]));
    let v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
    assert_eq!(v["status"], "salem");
    assert_eq!(v["heuristic_constant"], "0.3342");
    assert_eq!(v["trace"], 3);
}

#[test]
fn expand_short_expansion() {
    let o = run(&["expand", "-1", "0", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("m=1 p=5"), "{s}");
    assert!(s.contains("digits 1 : 0,1,0,0,0"), "{s}");
}

#[test]
fn expand_budget_exhaustion_reports_lower_bound() {
    let o = run(&["expand", "-3", "-1", "-7", "--max-steps", "100000"]);
    assert_eq!(o.status.code(), Some(2));
    let s = stdout(&o);
    assert!(s.contains("m+p > "), "{s}");
    assert!(!s.contains("m="), "{s}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["check", "-3", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["check", "x", "1", "2"]).status.code(), Some(1));
    assert_eq!(run(&["expand", "0", "0", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--eps", "-1", "check", "1", "1", "1"]).status.code(), Some(1));
    assert_eq!(run(&["family", "large-trace", "--a", "-3"]).status.code(), Some(1));
    assert_eq!(run(&["family", "large-period", "--k", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn resumed_expansion_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("run.ckpt");
    let state = state.to_str().unwrap();
    let common = ["expand", "-1", "-7", "-11", "--checkpoint-interval", "100", "--format", "tsv"];

    let mut first: Vec<&str> = common.to_vec();
    first.extend(["--max-steps", "1500", "--state-file", state]);
    assert_eq!(run(&first).status.code(), Some(2));
    let text = fs::read_to_string(state).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("ckpt ")).count() > 10);

    let mut resumed: Vec<&str> = common.to_vec();
    resumed.extend(["--state-file", state]);
    let a = run(&resumed);
    let b = run(&common);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("\t2438\t863\t"));
}

#[test]
fn corrupt_state_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("bad.ckpt");
    fs::write(&state, "not a checkpoint\n").unwrap();
    let o = run(&["expand", "-1", "0", "-1", "--state-file", state.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot resume"));
}

#[test]
fn state_file_for_other_polynomial_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("other.ckpt");
    let s = state.to_str().unwrap();
    assert_eq!(run(&["expand", "-1", "0", "-1", "--state-file", s]).status.code(), Some(0));
    let o = run(&["expand", "-2", "0", "-1", "--state-file", s]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tsv_is_stable_across_thread_counts() {
    let args = |t: &'static str| ["--threads", t, "--format", "tsv", "family", "variant-scan", "--offset", "-5", "--kmax", "4"];
    let a = run(&args("1"));
    let b = run(&args("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 4);
}

#[test]
fn families() {
    let o = run(&["family", "large-period", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("observed (1,22)") && s.contains(": pass"), "{s}");

    let o = run(&["family", "large-trace", "--a", "-8"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("m+p=6") && s.contains("C(beta)=0.0203"), "{s}");

    let o = run(&["family", "variant-scan", "--offset", "-4", "--kmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn empty_largeexp_table() {
    let o = run(&["--format", "tsv", "table", "largeexp", "--max-trace", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a,b,c\tm\tp\tm+p>\n");
}

#[test]
fn largeexp_table_small_trace() {
    let o = run(&["--format", "tsv", "table", "largeexp", "--max-trace", "5", "--max-steps", "20000"]);
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("-3,-1,-7\t*\t*\t"));
}

#[test]
fn cofactors_one_seven() {
    let o = run(&["--format", "tsv", "cofactors", "1", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let confirmed: Vec<&str> = s.lines().filter(|l| l.starts_with("confirmed")).collect();
    assert_eq!(confirmed.len(), 3, "{s}");
    for q in ["1 0 1", "1 -1 1", "1 2 1"] {
        assert!(confirmed.iter().any(|l| l.split('\t').nth(1) == Some(q)), "{q}");
    }
}
