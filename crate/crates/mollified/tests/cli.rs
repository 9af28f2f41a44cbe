//! End-to-end checks of the command-line contract: output schemas, the
//! seed environment override, file emission, and the exit-code split
//! between usage (2), domain (3), and runtime (4) failures.

use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mollified"))
        .args(args)
        .env_remove("MOLLIFIED_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = cli(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Failures print one JSON object to stderr and nothing to stdout.
fn failure_of(args: &[&str], code: i32) -> serde_json::Value {
    let out = cli(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty(), "{args:?} wrote to stdout on failure");
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON object")
}

fn kind_of(args: &[&str], code: i32) -> String {
    let err = failure_of(args, code);
    assert!(err["error"].is_string());
    err["kind"].as_str().unwrap().to_string()
}

#[test]
fn dist_cdf_at_the_median_prints_a_bare_half() {
    let out = stdout_of(&[
        "dist", "--family", "logistic", "--scale", "0.1", "--eval", "cdf", "--at", "0.5",
    ]);
    assert_eq!(out, "0.5\n");
}

#[test]
fn dist_second_moment_matches_the_closed_form() {
    let out = stdout_of(&[
        "dist", "--family", "logistic", "--scale", "0.1", "--eval", "moment", "--order", "2",
    ]);
    let value: f64 = out.trim().parse().unwrap();
    // E[X^2] = 1/3 + V with V the mollifier variance
    let expect = 1.0 / 3.0 + std::f64::consts::PI.powi(2) / 300.0;
    assert!((value - expect).abs() < 1e-12, "{value} vs {expect}");
}

#[test]
fn dist_flag_validation() {
    assert_eq!(kind_of(&["dist", "--family", "normal", "--scale", "0.1", "--eval", "pdf"], 2), "usage");
    assert_eq!(
        kind_of(
            &["dist", "--family", "normal", "--scale", "0.1", "--eval", "moment"],
            2
        ),
        "usage"
    );
    assert_eq!(
        kind_of(
            &["--format", "csv", "dist", "--family", "normal", "--scale", "0.1", "--eval", "kurtosis"],
            2
        ),
        "usage"
    );
}

#[test]
fn dist_domain_failures_exit_3() {
    let err = failure_of(
        &["dist", "--family", "normal", "--scale", "-1", "--eval", "kurtosis"],
        3,
    );
    assert_eq!(err["kind"], "domain");
    assert_eq!(
        kind_of(
            &["dist", "--family", "normal", "--scale", "0.1", "--eval", "qf", "--at", "1.5"],
            3
        ),
        "domain"
    );
    assert_eq!(
        kind_of(
            &["dist", "--family", "normal", "--scale", "0.1", "--eval", "moment", "--order", "31"],
            3
        ),
        "domain"
    );
}

#[test]
fn unknown_flags_and_help_follow_convention() {
    let out = cli(&["dist", "--nope"]);
    assert_eq!(out.status.code(), Some(2));

    let help = cli(&["--help"]);
    assert!(help.status.success());
    let text = String::from_utf8(help.stdout).unwrap();
    for name in [
        "dist", "ddist", "kurtosis-curve", "glm-example2", "ar1-sweep", "ar1-analyze", "sample",
        "--seed", "--out", "--format",
    ] {
        assert!(text.contains(name), "help is missing {name}");
    }
}

#[test]
fn ddist_tabulates_the_plotting_window() {
    let out = stdout_of(&["ddist", "--m", "5", "--lambda", "0.5"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("y,probability"));
    let rows: Vec<(i64, f64)> = lines
        .map(|l| {
            let (y, p) = l.split_once(',').unwrap();
            (y.parse().unwrap(), p.parse().unwrap())
        })
        .collect();
    // window runs from -10 to m + 10
    assert_eq!(rows.len(), 26);
    assert_eq!(rows[0].0, -10);
    assert_eq!(rows[25].0, 15);
    assert!(rows.iter().all(|&(_, p)| p > 0.0));
    let mass: f64 = rows.iter().map(|&(_, p)| p).sum();
    assert!((mass - 1.0).abs() < 1e-8, "window mass {mass}");
}

#[test]
fn ddist_validation() {
    assert_eq!(kind_of(&["ddist", "--m", "1"], 3), "domain");
    assert_eq!(kind_of(&["ddist", "--lambda", "0"], 3), "domain");
    assert_eq!(kind_of(&["--format", "json", "ddist"], 2), "usage");
}

#[test]
fn ddist_tags_one_file_per_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pmf.csv");
    let summary = stdout_of(&[
        "ddist", "--m", "10", "--lambda", "0.1,0.5", "--out", path.to_str().unwrap(),
    ]);
    let low = dir.path().join("pmf-lambda0.1.csv");
    let high = dir.path().join("pmf-lambda0.5.csv");
    for p in [&low, &high] {
        let text = std::fs::read_to_string(p).unwrap();
        assert_eq!(text.lines().count(), 32, "{}", p.display());
        assert!(text.starts_with("y,probability\n"));
    }
    assert!(!path.exists(), "untagged path must not be written");
    assert_eq!(
        summary,
        format!("wrote {} (31 rows), wrote {} (31 rows)\n", low.display(), high.display())
    );
}

#[test]
fn kurtosis_curve_covers_three_families_and_pins_the_uniform_row() {
    let out = stdout_of(&["kurtosis-curve"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "family,variance,kurtosis");
    // 52 grid points per family: the exact variance-0 row plus 51 log-spaced
    assert_eq!(lines.len(), 1 + 3 * 52);
    assert_eq!(lines[1], "normal,0,1.8");

    let out = stdout_of(&["kurtosis-curve", "--family", "laplace", "--variances", "0,1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1], "laplace,0,1.8");
    let kappa: f64 = lines[2].strip_prefix("laplace,1,").unwrap().parse().unwrap();
    assert!((kappa - 4689.0 / 845.0).abs() < 1e-12);
}

#[test]
fn glm_summary_json_carries_the_run_configuration() {
    let out = stdout_of(&["glm-example2", "--runs", "3", "--seed", "7"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["runs"], 3);
    assert_eq!(v["seed"], 7);
    for field in ["mean_alpha", "mean_beta", "mean_violations"] {
        assert!(v[field].is_f64(), "missing {field}");
    }
    assert!(v["runs_nonpositive"].is_u64());
}

#[test]
fn glm_csv_lists_one_record_per_run() {
    let out = stdout_of(&["glm-example2", "--runs", "2", "--seed", "5", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "run,alpha_hat,beta_hat,violations");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,"));
    assert!(lines[2].starts_with("1,"));
}

#[test]
fn seed_env_is_an_alias_for_the_flag() {
    let flagged = stdout_of(&["glm-example2", "--runs", "2", "--seed", "123"]);

    let out = Command::new(env!("CARGO_BIN_EXE_mollified"))
        .args(["glm-example2", "--runs", "2"])
        .env("MOLLIFIED_SEED", "123")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), flagged);

    // an explicit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_mollified"))
        .args(["glm-example2", "--runs", "2", "--seed", "123"])
        .env("MOLLIFIED_SEED", "999")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), flagged);
}

#[test]
fn omitting_the_seed_means_the_documented_default() {
    let defaulted = stdout_of(&["sample", "--family", "normal", "--scale", "0.1", "--runs", "3"]);
    let pinned = stdout_of(&[
        "sample", "--family", "normal", "--scale", "0.1", "--runs", "3", "--seed", "271828",
    ]);
    assert_eq!(defaulted, pinned);
}

#[test]
fn ar1_sweep_emits_the_full_grid() {
    let out = stdout_of(&["ar1-sweep", "--n", "30", "--c", "0.01,0.1", "--target-mean", "0.3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "c,b,mean_norm,pacf1,pacf2");
    // two c values over the default 19-point slope grid
    assert_eq!(lines.len(), 1 + 2 * 19);
    assert!(lines[1].starts_with("0.01,-0.9,"));
    assert!(lines[38].starts_with("0.1,0.9,"));

    let narrow = stdout_of(&["ar1-sweep", "--n", "10", "--c", "0.05", "--b", "-0.5,0.5"]);
    assert_eq!(narrow.lines().count(), 3);
}

#[test]
fn ar1_analyze_reports_lagged_correlations_as_json() {
    let out = stdout_of(&["ar1-analyze", "--n", "10", "--b", "0.5", "--c", "0.01", "--lags", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["mean"].is_f64() && v["variance"].is_f64());
    assert_eq!(v["acf"].as_array().unwrap().len(), 4);
    assert_eq!(v["acf"][0], 1.0);
    assert_eq!(v["pacf"].as_array().unwrap().len(), 3);
}

#[test]
fn ar1_analyze_flag_validation() {
    assert_eq!(
        kind_of(&["ar1-analyze", "--n", "10", "--b", "0.5", "--c", "0.01,0.1"], 2),
        "usage"
    );
    assert_eq!(
        kind_of(
            &["--format", "csv", "ar1-analyze", "--n", "10", "--b", "0.5", "--c", "0.01"],
            2
        ),
        "usage"
    );
    // clap rejects the a/target-mean combination before dispatch
    let out = cli(&[
        "ar1-analyze", "--n", "10", "--b", "0.5", "--c", "0.01", "--a", "0.2", "--target-mean", "0.3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sample_emits_parseable_draws() {
    let out = stdout_of(&["sample", "--family", "laplace", "--scale", "0.2", "--runs", "4", "--seed", "9"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "value");
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let x: f64 = l.parse().unwrap();
        assert!(x.is_finite());
    }

    assert_eq!(kind_of(&["sample", "--family", "normal", "--scale", "0.1", "--runs", "0"], 3), "domain");
}

#[test]
fn out_writes_the_file_and_summarizes_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let summary = stdout_of(&[
        "kurtosis-curve", "--family", "normal", "--variances", "0,0.5",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(summary, format!("wrote {} (2 rows)\n", path.display()));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn unwritable_out_path_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.csv");
    assert_eq!(
        kind_of(
            &["kurtosis-curve", "--variances", "0", "--out", path.to_str().unwrap()],
            4
        ),
        "io"
    );
}
