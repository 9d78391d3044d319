use std::process::{Command, Output};

fn percword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_percword"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = percword(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_row<'a>(text: &'a str, n: &str) -> Vec<&'a str> {
    text.lines()
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|cols| cols[0] == n)
        .unwrap_or_else(|| panic!("no row {n}"))
}

#[test]
fn vn_table_rows() {
    let out = percword(&["vn", "--M", "2", "--N", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(&csv_row(&text, "2")[1..3], ["5", "8"]);
    assert_eq!(&csv_row(&text, "1")[1..3], ["3", "4"]);
    assert_eq!(&csv_row(&text, "3")[1..3], ["17", "32"]);

    let text = stdout(&percword(&["vn", "--M", "2", "--N", "0"]));
    assert_eq!(&csv_row(&text, "0")[1..3], ["1", "1"]);
}

#[test]
fn vn_ratio_settles_for_wide_window() {
    let text = stdout(&percword(&["vn", "--M", "5", "--N", "400"]));
    let ratio: f64 = csv_row(&text, "399").last().unwrap().parse().unwrap();
    assert!((ratio - 0.9978).abs() < 1e-4, "{ratio}");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "thm1a", "--M", "2", "--n", "8"][..],
        &["verify", "alternating-max", "--M", "2", "--n", "6"],
        &["verify", "renewal", "--M", "2", "--N", "100"],
        &["verify", "spacing", "--M", "2", "--n", "8"],
        &["verify", "two-block", "--M", "3"],
    ] {
        let out = percword(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["passed"], true, "{args:?}");
    }
}

#[test]
fn growth_constant_for_pairs() {
    let report = json(&["cm", "--M", "2"]);
    let c = report["bisection"].as_f64().unwrap();
    assert!((c - 4.0 / 3.0).abs() < 1e-9, "{c}");
    assert_eq!(report["methods_agree"], true);
}

#[test]
fn exact_matches_oracle() {
    let fast = json(&["exact", "--word", "1100", "--M", "2"]);
    let slow = json(&["exact", "--word", "1100", "--M", "2", "--oracle"]);
    assert_eq!(fast["probability"], slow["probability"]);
    assert_eq!(fast["p"], "1/2");
}

#[test]
fn maxword_single_letter() {
    let report = json(&["maxword", "--n", "1", "--M", "2"]);
    assert_eq!(report["max"]["num"], "3");
    assert_eq!(report["max"]["den"], "4");
}

#[test]
fn json_reemits_identically() {
    for args in [
        &["cm", "--M", "3"][..],
        &["exact", "--word", "1100", "--M", "2"],
        &["renewal", "--M", "2", "--N", "12", "--format", "json"],
        &["simulate", "--word", "101", "--M", "2", "--trials", "500", "--seed", "3"],
    ] {
        let out = percword(args);
        assert!(out.status.success(), "{args:?}");
        let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        assert_eq!(again.as_bytes(), &out.stdout[..], "{args:?}");
    }
}

#[test]
fn seeded_runs_repeat() {
    let args = ["simulate", "--word", "1100", "--M", "2", "--trials", "2000", "--seed", "11"];
    assert_eq!(percword(&args).stdout, percword(&args).stdout);
    let chain = ["couple", "--p", "0.9", "--target", "0.1", "--trials", "50", "--length", "16", "--seed", "5"];
    let first = percword(&chain);
    assert_eq!(first.stdout, percword(&chain).stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "thm1a", "--M", "2", "--n", "-1"][..],
        &["vn", "--M", "1", "--N", "3"],
        &["exact", "--word", "1102", "--M", "2"],
        &["exact", "--word", "11", "--constant", "1", "--n", "2", "--M", "2"],
        &["exact", "--word", "11", "--M", "2", "--p", "3/2"],
        &["nonsense"],
    ] {
        assert_eq!(percword(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn grid_reports_path() {
    let out = percword(&["grid", "--x", "11", "--y", "1011", "--M", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("P1"));
    assert!(!out.stderr.is_empty());
}
