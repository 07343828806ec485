//! End-to-end tests of the `eg2` binary: exit codes, report content, CSV
//! contract, and scenario-file validation.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eg2"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

#[test]
fn compare_series_example_dominates_second() {
    let path = scenario_dir().join("ex3_3.toml");
    let out = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("SecondDominates"), "{text}");
    assert!(text.contains("X_{1:2} <=_st X*_{1:2}"), "{text}");
}

#[test]
fn compare_parallel_example_dominates_first() {
    let path = scenario_dir().join("ex3_4.toml");
    let out = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("FirstDominates"), "{text}");
    assert!(text.contains("X_{2:2} >=_st X*_{2:2}"), "{text}");
}

#[test]
fn compare_crossing_example_exits_two() {
    let path = scenario_dir().join("ex3_11.toml");
    let out = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("Crossing"), "{text}");
    assert!(text.contains("crossing in ["), "{text}");
}

#[test]
fn compare_identical_systems_is_equal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("same.toml");
    std::fs::write(
        &path,
        r#"
kind = "series"
order = "st"

[[system_a]]
theta = 1.7
phi = 2.0
alpha = 0.54

[[system_b]]
theta = 1.7
phi = 2.0
alpha = 0.54
"#,
    )
    .unwrap();
    let out = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("Equal"));
}

#[test]
fn unknown_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(
        &path,
        r#"
kind = "series"
order = "st"
unexpected = 1

[[system_a]]
theta = 1.0
phi = 1.0
alpha = 1.0

[[system_b]]
theta = 1.0
phi = 1.0
alpha = 1.0
"#,
    )
    .unwrap();
    let out = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("unexpected"), "{}", stderr(&out));
}

#[test]
fn parse_errors_carry_line_context() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, "kind = \"series\"\norder = oops\n").unwrap();
    let out = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn rf_with_series_kind_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rf_series.toml");
    std::fs::write(
        &path,
        r#"
kind = "series"
order = "rf"

[[system_a]]
theta = 1.0
phi = 1.0
alpha = 1.0

[[system_b]]
theta = 1.0
phi = 1.0
alpha = 2.0
"#,
    )
    .unwrap();
    let out = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("parallel"), "{}", stderr(&out));
}

#[test]
fn dump_normalized_round_trips_to_same_digest() {
    let path = scenario_dir().join("ex3_3.toml");
    let first = run(&["compare", path.to_str().unwrap(), "--dump-normalized"]);
    assert_eq!(exit_code(&first), 0);
    let text = stdout(&first);
    let digest_line = text.lines().next().unwrap().to_string();
    assert!(digest_line.starts_with("# digest sha256 = "));
    let body: String = text
        .lines()
        .skip(1)
        .map(|l| format!("{l}\n"))
        .collect();

    let dir = tempfile::tempdir().unwrap();
    let reload = dir.path().join("normalized.toml");
    std::fs::write(&reload, &body).unwrap();
    let second = run(&["compare", reload.to_str().unwrap(), "--dump-normalized"]);
    assert_eq!(exit_code(&second), 0);
    assert_eq!(stdout(&second).lines().next().unwrap(), digest_line);
}

#[test]
fn digest_is_stable_under_key_reordering() {
    // Same scenario with table keys and sections shuffled.
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.toml");
    let b = dir.path().join("b.toml");
    std::fs::write(
        &a,
        "kind = \"series\"\norder = \"st\"\n\n[[system_a]]\ntheta = 1.0\nphi = 2.0\nalpha = 0.5\n\n[[system_b]]\ntheta = 1.5\nphi = 2.0\nalpha = 0.7\n",
    )
    .unwrap();
    std::fs::write(
        &b,
        "order = \"st\"\nkind = \"series\"\n\n[[system_a]]\nalpha = 0.5\nphi = 2.0\ntheta = 1.0\n\n[[system_b]]\nalpha = 0.7\ntheta = 1.5\nphi = 2.0\n",
    )
    .unwrap();
    let da = stdout(&run(&["compare", a.to_str().unwrap(), "--dump-normalized"]));
    let db = stdout(&run(&["compare", b.to_str().unwrap(), "--dump-normalized"]));
    assert_eq!(da, db);
}

#[test]
fn csv_is_deterministic_with_mandatory_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario_dir().join("ex3_11.toml");
    let csv1 = dir.path().join("run1.csv");
    let csv2 = dir.path().join("run2.csv");
    for csv in [&csv1, &csv2] {
        let out = run(&[
            "compare",
            path.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
            "--grid-points",
            "256",
        ]);
        assert_eq!(exit_code(&out), 2);
    }
    let b1 = std::fs::read(&csv1).unwrap();
    let b2 = std::fs::read(&csv2).unwrap();
    assert_eq!(b1, b2, "csv bytes must be identical across runs");

    let text = String::from_utf8(b1).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,F_A,Fbar_A,f_A,rhaz_A,F_B,Fbar_B,f_B,rhaz_B,diff_surv"
    );
    assert_eq!(text.lines().count(), 257);
}

#[test]
fn csv_shows_survival_difference_sign_change() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario_dir().join("ex3_11.toml");
    let csv = dir.path().join("cross.csv");
    let out = run(&[
        "compare",
        path.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    let text = std::fs::read_to_string(&csv).unwrap();
    let diffs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .collect();
    let has_pos = diffs.iter().any(|&d| d > 1e-10);
    let has_neg = diffs.iter().any(|&d| d < -1e-10);
    assert!(has_pos && has_neg, "diff_surv must change sign");
}

#[test]
fn grid_flags_override_scenario() {
    let path = scenario_dir().join("ex3_3.toml");
    let out = run(&[
        "compare",
        path.to_str().unwrap(),
        "--grid-points",
        "128",
        "--grid-min",
        "0.1",
        "--grid-max",
        "10",
        "--spacing",
        "linear",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("linear [0.1, 10] x 128"), "{text}");
    assert!(text.contains("SecondDominates"), "{text}");
}

#[test]
fn reproduce_first_example_recovers_weight() {
    let out = run(&["reproduce", "3.3"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("recovered w = 0.7999999999999998"), "{text}");
    assert!(text.contains("all checks pass"), "{text}");
    assert!(text.contains("phi       = 2"), "{text}");
}

#[test]
fn reproduce_second_example_recovers_weight() {
    let out = run(&["reproduce", "3.4"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("recovered w = 0.4"), "{text}");
    assert!(text.contains("all checks pass"), "{text}");
    assert!(text.contains("w = 0.4"), "{text}");
}

#[test]
fn reproduce_crossing_example_flags_majorization() {
    let out = run(&["reproduce", "3.11"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("FAILS as printed"), "{text}");
    assert!(text.contains("1.44"), "{text}");
    assert!(text.contains("1.5"), "{text}");
    assert!(text.contains("crossing x = 39.54182589"), "{text}");
}

#[test]
fn reproduce_unknown_id_is_an_input_error() {
    let out = run(&["reproduce", "9.9"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("unknown example id"));
}

#[test]
fn chain_fixture_concludes() {
    let path = scenario_dir().join("chain_ex3_3.toml");
    let out = run(&["chain", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("all_members = true"), "{text}");
    assert!(text.contains("X_{1:2} <=_st X*_{1:2}"), "{text}");
}

#[test]
fn chain_with_failing_intermediate_withholds_conclusion() {
    let path = scenario_dir().join("chain_broken_intermediate.toml");
    let out = run(&["chain", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("all_members = false"), "{text}");
    assert!(text.contains("withheld"), "{text}");
}

#[test]
fn chain_without_transforms_restates_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.toml");
    std::fs::write(
        &path,
        "set = \"S\"\nalphas = [0.5, 0.7]\nthetas = [1.8, 1.3]\n",
    )
    .unwrap();
    let out = run(&["chain", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("initial    = [[0.5, 0.7], [1.8, 1.3]]"), "{text}");
    assert!(text.contains("nothing to conclude"), "{text}");
}

#[test]
fn crossings_command_prints_abscissae() {
    let path = scenario_dir().join("ex3_11.toml");
    let out = run(&["crossings", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("crossings = 1"), "{text}");
    assert!(text.contains("x = 39.54182589"), "{text}");
}

#[test]
fn eval_prints_distribution_values() {
    let out = run(&[
        "eval", "--theta", "1", "--phi", "1", "--alpha", "1", "--x", "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("cdf             = 0.36787944117144233"), "{text}");
    assert!(text.contains("survival        = 0.6321205588285577"), "{text}");
    assert!(text.contains("reversed_hazard = 1"), "{text}");
}

#[test]
fn eval_rejects_bad_parameters() {
    let out = run(&[
        "eval", "--theta", "0", "--phi", "1", "--alpha", "1", "--x", "1",
    ]);
    assert_eq!(exit_code(&out), 1);
}
