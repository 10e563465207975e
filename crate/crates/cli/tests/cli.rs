use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn normlog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normlog"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn generate(dir: &TempDir, family: &str, n: &str, seed: &str, extra: &[&str]) -> String {
    let path = dir.path().join(format!("{family}-{n}-{seed}.json"));
    let p = path.to_str().unwrap().to_owned();
    let mut args = vec!["generate", "--family", family, "--n", n, "--seed", seed, "--out", &p];
    args.extend_from_slice(extra);
    let out = normlog(&args);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn version_prints_package_version() {
    let out = normlog(&["version"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        format!("normlog {}", env!("CARGO_PKG_VERSION"))
    );
}

#[test]
fn generated_pair_has_documented_shape() {
    let dir = TempDir::new().unwrap();
    let pair = generate(&dir, "DistinctProjectionPair", "3", "7", &[]);
    let v = read_json(Path::new(&pair));
    assert_eq!(v["n"], 3);
    assert_eq!(v["x"]["n"], 3);
    let entries = v["x"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0].as_array().unwrap().len(), 3);
    assert_eq!(entries[0][0].as_array().unwrap().len(), 2);
    // every real is written as d.dddddddddddddddde±x: 17 significant digits
    let text = std::fs::read_to_string(&pair).unwrap();
    let body = &text[text.find("\"x\"").unwrap()..];
    let reals: Vec<&str> = body
        .split(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | 'e' | '-' | '+')))
        .filter(|t| t.contains('.'))
        .collect();
    assert_eq!(reals.len(), 2 * 2 * 9);
    for r in reals {
        let mantissa = r.trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.len(), 18, "{r}");
    }
}

#[test]
fn check_passes_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let pair = generate(&dir, "DistinctProjectionPair", "4", "1", &[]);
    let report = dir.path().join("report.json");
    let out = normlog(&[
        "check",
        "--name",
        "modulus_equal",
        "--in",
        &pair,
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    let v = read_json(&report);
    let row = &v["results"][0];
    assert_eq!(row["check"], "modulus_equal");
    assert_eq!(row["family"], "DistinctProjectionPair");
    assert_eq!(row["passed"], true);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn unattainable_tolerance_exits_one() {
    let dir = TempDir::new().unwrap();
    let pair = generate(&dir, "DistinctProjectionPair", "4", "2", &[]);
    let report = dir.path().join("report.json");
    let out = normlog(&[
        "check",
        "--name",
        "difference_formula",
        "--in",
        &pair,
        "--tol",
        "1e-30",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(read_json(&report)["results"][0]["passed"], false);
}

#[test]
fn negative_control_is_skipped_not_failed() {
    let dir = TempDir::new().unwrap();
    let pair = generate(&dir, "SelfAdjointCongruenceFree", "4", "3", &["--negative"]);
    let report = dir.path().join("report.json");
    let out = normlog(&[
        "check",
        "--name",
        "double-commutant",
        "--in",
        &pair,
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let row = &read_json(&report)["results"][0];
    assert_eq!(row["hypothesis_met"], false);
    assert_eq!(row["passed"], false);
}

#[test]
fn shifted_window_round_trips_through_the_file() {
    let dir = TempDir::new().unwrap();
    let pair = generate(&dir, "ShiftedBranchPair", "6", "4", &["--k-lo", "-3", "--k-hi", "2"]);
    assert_eq!(read_json(Path::new(&pair))["k_lo"], -3);
    let report = dir.path().join("report.json");
    let out = normlog(&[
        "check",
        "--name",
        "difference_formula",
        "--in",
        &pair,
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stdout: {}", String::from_utf8_lossy(&out.stdout));
    // a window too narrow for the spectrum is reported as a failed check
    let out = normlog(&[
        "check",
        "--name",
        "difference_formula",
        "--in",
        &pair,
        "--k-lo",
        "-1",
        "--k-hi",
        "0",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let notes = read_json(&report)["results"][0]["notes"].as_str().unwrap().to_owned();
    assert!(notes.contains("error"), "{notes}");
}

#[test]
fn usage_and_io_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    let report = dir.path().join("r.json");
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "check",
            "--name",
            "real_part",
            "--in",
            missing.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
        ],
        vec![
            "generate",
            "--family",
            "Bogus",
            "--n",
            "2",
            "--out",
            report.to_str().unwrap(),
        ],
        vec![
            "generate",
            "--family",
            "InteriorPair",
            "--n",
            "0",
            "--out",
            report.to_str().unwrap(),
        ],
        vec![
            "check",
            "--name",
            "bogus",
            "--in",
            missing.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
        ],
        vec!["frobnicate"],
        vec![],
    ];
    for args in cases {
        assert_eq!(code(&normlog(&args)), 2, "{args:?}");
    }

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"n\": 2}").unwrap();
    let out = normlog(&[
        "check",
        "--name",
        "real_part",
        "--in",
        garbage.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn suite_with_config_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("suite.json");
    std::fs::write(&config, r#"{"suite": "smoke", "sizes": [2, 3], "seeds": 2}"#).unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let run = |report: &Path, jobs: &str| {
        normlog(&[
            "suite",
            "--config",
            config.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
            "--jobs",
            jobs,
        ])
    };
    let out = run(&a, "1");
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&run(&b, "3")), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let v = read_json(&a);
    assert_eq!(v["suite"], "smoke");
    let s = &v["summary"];
    assert_eq!(s["failed"], 0);
    assert!(s["skipped_hypothesis"].as_u64().unwrap() > 0);
    assert_eq!(
        s["total"].as_u64().unwrap() as usize,
        v["results"].as_array().unwrap().len()
    );
}

#[test]
fn suite_failures_and_bad_configs() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("strict.json");
    std::fs::write(
        &config,
        r#"{"families": ["InteriorPair", "NonNormalLogPair"], "sizes": [3], "seeds": 2, "tolerances": {"check": 1e-30}}"#,
    )
    .unwrap();
    assert_eq!(code(&normlog(&["suite", "--config", config.to_str().unwrap()])), 1);

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"families": []}"#).unwrap();
    let out = normlog(&["suite", "--config", empty.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("total 0"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"famlies": []}"#).unwrap();
    assert_eq!(code(&normlog(&["suite", "--config", bad.to_str().unwrap()])), 2);
    assert_eq!(
        code(&normlog(&[
            "suite",
            "--config",
            dir.path().join("nope.json").to_str().unwrap()
        ])),
        2
    );
}
