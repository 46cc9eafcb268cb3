use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"));
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_likelihood"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn census_of_five_quadrics() {
    let v = json_ok(&["census", &fixture("five_quadrics")]);
    assert_eq!(v["total"], 29);
    assert_eq!(
        v["by_degree"],
        serde_json::json!({"0": 1, "6": 6, "7": 16, "8": 6})
    );
}

#[test]
fn ml_degree_of_line_and_conics() {
    assert_eq!(
        json_ok(&["mldegree", &fixture("line_three_conics")])["ml_degree"],
        13
    );
    let v = json_ok(&["multidegree", &fixture("line_three_conics")]);
    assert_eq!(v["coefficients"], serde_json::json!([1, 4, 13]));
}

#[test]
fn verify_square_case() {
    let v = json_ok(&["verify", &fixture("n2_112")]);
    assert_eq!(v["ideal_equal"], true);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["generate", "line_three_conics"],
        vec!["snc", "line_three_conics"],
        vec!["derivations", "three_conics"],
        vec!["eulerdisc", "four_lines"],
    ] {
        let path = fixture(args[1]);
        let first = run(&[args[0], &path]).stdout;
        let second = run(&[args[0], &path]).stdout;
        assert!(!first.is_empty());
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn census_and_generate_agree() {
    for name in ["n2_112", "four_lines", "three_conics", "line_three_conics"] {
        let census = json_ok(&["census", &fixture(name)]);
        let generated = json_ok(&["generate", &fixture(name)]);
        assert_eq!(
            census["total"],
            generated["generators"].as_array().unwrap().len(),
            "{name}"
        );
    }
}

#[test]
fn checked_generators_are_minimal() {
    let v = json_ok(&["generate", "--check-snc", &fixture("line_three_conics")]);
    assert_eq!(v["status"], "minimal");
}

#[test]
fn negative_controls() {
    let v = json_ok(&["snc", &fixture("tangent_conics")]);
    assert_eq!(v["verdict"], "not-snc");
    assert_eq!(v["witness"], serde_json::json!([1, 2]));
    let v = json_ok(&["verify", &fixture("concurrent_lines")]);
    assert_eq!(v["ideal_equal"], false);
    let v = json_ok(&["generate", &fixture("concurrent_lines")]);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn input_errors_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("likelihood-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"version":1,"n":3,"polynomials":["x1 +"]}"#).unwrap();
    let inhomogeneous = dir.join("inhomogeneous.json");
    std::fs::write(
        &inhomogeneous,
        r#"{"version":1,"n":3,"polynomials":["x1^2 + x2"]}"#,
    )
    .unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["census".into(), bad.to_string_lossy().into()],
        vec!["census".into(), inhomogeneous.to_string_lossy().into()],
        vec![
            "census".into(),
            dir.join("missing.json").to_string_lossy().into(),
        ],
        vec![
            "verify".into(),
            "--mod-p".into(),
            "12".into(),
            fixture("n2_112"),
        ],
        vec![
            "generate".into(),
            "--delete-column".into(),
            "9".into(),
            fixture("line_three_conics"),
        ],
        vec!["frobnicate".into()],
    ];
    for args in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert_eq!(error_kind(&out), "input", "{args:?}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budget_exhaustion_exits_with_two() {
    let out = run(&[
        "verify",
        "--budget-size",
        "3",
        &fixture("line_three_conics"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "inconclusive");
}

#[test]
fn modular_verification_is_advisory() {
    let v = json_ok(&["verify", "--mod-p", "32003", &fixture("n2_112")]);
    assert_eq!(v["ideal_equal"], true);
    assert_eq!(v["advisory"], true);
}

#[test]
fn synthesis_is_seed_determined() {
    let args = [
        "synth",
        "--n",
        "3",
        "--degrees",
        "1,2,2",
        "--planted",
        "1,2",
        "--planted",
        "2,3",
        "--seed",
        "1",
    ];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    let other = run(&[
        "synth",
        "--n",
        "3",
        "--degrees",
        "1,2,2",
        "--planted",
        "1,2",
        "--seed",
        "2",
    ])
    .stdout;
    assert_ne!(a, other);
    let dir = std::env::temp_dir().join(format!("likelihood-synth-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("synth.json");
    std::fs::write(&path, &a).unwrap();
    let v = json_ok(&["census", path.to_str().unwrap()]);
    assert_eq!(v["degrees"], serde_json::json!([1, 2, 2]));
    std::fs::remove_dir_all(&dir).unwrap();
}
