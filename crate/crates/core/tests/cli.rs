use std::process::Command;

use dimspec::cli::run_cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("dimspec").chain(args.iter().copied()).map(Into::into);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli(argv.collect::<Vec<std::ffi::OsString>>(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn energy_json_for_the_coulomb_row() {
    let (code, out, _) = run(&["energy", "--D", "3", "--n", "1", "--scheme", "mn", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classification"], "bound");
    assert_eq!(v["E0_sign"], -1);
    assert_eq!(v["E0_decimal"], "-1.11e-1");
    let e = v["E0"].as_f64().unwrap();
    assert!((e + 1.0 / 9.0).abs() < 1e-14);
}

#[test]
fn feasible_lists_members() {
    let (code, out, _) = run(&["feasible", "--n", "3", "--scheme", "mn"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap().trim(), "7 8 9 10 11");
    let (_, out, _) = run(&["feasible", "--n", "3", "--scheme", "m1"]);
    assert!(out.contains("3 4 5 6 7"));
    assert!(out.contains("paper-omitted: 4"));
}

#[test]
fn verify_reports_summary_and_succeeds() {
    let (code, out, _) = run(&["verify", "--max-n", "5", "--max-D", "20"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("checked "));
    assert!(out.contains("max relative deviation ≤ 1e-8"));
}

#[test]
fn invalid_arguments_exit_with_one() {
    assert_eq!(run(&["bogus"]).0, 1);
    assert_eq!(run(&["energy", "--D", "1", "--n", "1"]).0, 1);
    assert_eq!(run(&["energy", "--D", "3", "--n", "1", "--scheme", "nope"]).0, 1);
    assert_eq!(run(&["scan", "--D", "5..3", "--n", "1"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn table1_has_ten_rows() {
    let (code, out, _) = run(&["table1", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("D,n,m,beta,"));
    assert_eq!(lines.count(), 10);
}

#[test]
fn radial_json_reports_the_hydrogen_level() {
    let (code, out, _) = run(&["radial", "--D", "3", "--convention", "half", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let e = v["E"].as_f64().unwrap();
    assert!((e + 0.5).abs() < 1e-4);
}

#[test]
fn scan_csv_round_trips_through_out_file() {
    let path = std::env::temp_dir().join(format!("dimspec-scan-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _, _) = run(&["scan", "--D", "2..21", "--n", "1..10", "--format", "csv", "--out", p]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let records = dimspec::report::read_csv(text.as_bytes(), dimspec::Scheme::MEqualsN).unwrap();
    assert_eq!(records.len(), 200);
}

#[test]
fn thread_count_comes_from_environment() {
    let bin = env!("CARGO_BIN_EXE_dimspec");
    let scan = |threads: &str| {
        Command::new(bin)
            .args(["scan", "--D", "2..21", "--n", "1..10", "--format", "csv"])
            .env("DIMSPEC_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = scan("1");
    let eight = scan("8");
    assert!(one.status.success() && eight.status.success());
    assert_eq!(one.stdout, eight.stdout);
    let bad = scan("zero");
    assert_eq!(bad.status.code(), Some(1));
}
