use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use basinlab::deform::catalog::{
    example41, example42, example43, CubicParams, LineParams, RotationParams,
};
use basinlab::deform::DeformationFamily;
use basinlab::foliation::{CompleteIntersection, Manifest};
use serde_json::Value;

fn manifest(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("manifests")
        .join(name)
}

fn basinlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_basinlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    basinlab(args).status.code().expect("exit code")
}

/// Runs with `--out` in a fresh directory; returns the exit code and the
/// raw report.
fn report(args: &[&str]) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", out.to_str().unwrap()]);
    let status = code(&all);
    (status, fs::read_to_string(&out).unwrap_or_default())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (status, text) = report(args);
    (
        status,
        serde_json::from_str(&text).expect("valid JSON report"),
    )
}

fn path(name: &str) -> String {
    manifest(name).display().to_string()
}

#[test]
fn usage_and_input_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "n = 3\nX1 = z1 +* z2\nX2 = z2\nX3 = z3\n").unwrap();
    assert_eq!(code(&["solve", "--field", bad.to_str().unwrap()]), 2);
    let out_of_range = dir.path().join("range.txt");
    fs::write(&out_of_range, "n = 2\nX1 = z3\nX2 = z1\n").unwrap();
    assert_eq!(
        code(&["solve", "--field", out_of_range.to_str().unwrap()]),
        2
    );
    assert_eq!(code(&["nu", "--preset", "no-such-preset", "--m", "2"]), 2);
    assert_eq!(code(&["deform", "--family", "example99"]), 2);
    let schedule = [
        "deform",
        "--family",
        "example42-translation",
        "--t-seq",
        "1/100,1/10,1/1000",
    ];
    assert_eq!(code(&schedule), 2);
    assert_eq!(code(&["check", "44"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn positive_dimensional_singular_set_exits_with_3() {
    assert_eq!(
        code(&["solve", "--field", &path("positive-dimensional.txt")]),
        3
    );
}

#[test]
fn exhausted_pair_budget_exits_with_4() {
    let args = [
        "solve",
        "--field",
        &path("example42.txt"),
        "--t",
        "1/1000",
        "--pair-budget",
        "1",
    ];
    assert_eq!(code(&args), 4);
}

#[test]
fn colliding_points_exit_with_5() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("collide.txt");
    // The two roots of z1^2 + 1/1000 - t merge at t = 1/1000.
    let text = "n = 3\nX1 = z1^2 + 1/1000\nX2 = z2\nX3 = z3\nW = z2; z3\nD1 = 1\nD2 = 0\nD3 = 0\n";
    fs::write(&m, text).unwrap();
    assert_eq!(code(&["deform", "--family", m.to_str().unwrap()]), 5);
}

#[test]
fn solve_reports_points_and_multiplicity() {
    let (status, v) = json(&["solve", "--field", &path("example42.txt"), "--t", "1/1000"]);
    assert_eq!(status, 0);
    assert_eq!(v["total_multiplicity"], 27);
    let sum: u64 = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["multiplicity"].as_u64().unwrap())
        .sum();
    assert_eq!(sum, 27);
    let (status, v) = json(&["solve", "--field", &path("linear.txt"), "--order", "lex"]);
    assert_eq!(status, 0);
    assert_eq!(v["total_multiplicity"], 1);
    assert_eq!(
        v["points"][0]["coords"],
        serde_json::json!([[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["deform", "--family", "example41", "--m", "2", "--seed", "3"],
        vec!["deform", "--family", "example43", "--special"],
        vec!["solve", "--field", "MANIFEST", "--t", "1/100"],
    ] {
        let m = path("example42.txt");
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "MANIFEST" { m.as_str() } else { a })
            .collect();
        let (s1, a) = report(&args);
        let (s2, b) = report(&args);
        assert_eq!((s1, s2), (0, 0));
        // The output path is part of the embedded config; mask it.
        let mask = |s: &str| {
            let mut v: Value = serde_json::from_str(s).unwrap();
            v["config"]["out"] = Value::Null;
            v.to_string()
        };
        assert_eq!(mask(&a), mask(&b));
    }
}

#[test]
fn every_report_carries_version_seed_tolerances_and_config() {
    let m42 = path("example42.txt");
    let m41 = path("example41-m2.txt");
    let runs: Vec<Vec<&str>> = vec![
        vec!["solve", "--field", &m42, "--t", "1/100"],
        vec!["deform", "--family", "example42-translation"],
        vec!["nu", "--preset", "p3-line", "--m", "3"],
        vec!["bounds", "--k", "3", "--n", "3"],
        vec![
            "balance",
            "--n",
            "3",
            "--k",
            "2",
            "--nu",
            "-12",
            "--sum-isolated",
            "3",
        ],
        vec!["mult-w", "--field", &m41],
        vec!["ell", "--field", &m41],
        vec!["totally-simple", "--field", &m42],
        vec!["check", "43"],
    ];
    for args in runs {
        let (status, v) = json(&args);
        assert_eq!(status, 0, "{args:?}");
        for key in ["version", "seed", "tolerances", "config"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
        assert_eq!(v["config"]["command"], args[0]);
    }
}

#[test]
fn invariant_commands_print_the_expected_values() {
    let (_, v) = json(&["nu", "--preset", "p3-line", "--m", "3"]);
    assert_eq!(v["nu"], "-36");
    let (_, v) = json(&["bounds", "--k", "3", "--n", "3", "--radial"]);
    assert_eq!(v["bound"], "14");
    let (_, v) = json(&["bounds", "--field", &path("example41-m2.txt")]);
    assert_eq!(v["bound"], "8");
    let (_, v) = json(&[
        "balance",
        "--n",
        "3",
        "--k",
        "2",
        "--nu",
        "-12",
        "--embedded",
        "?",
        "--sum-isolated",
        "3",
    ]);
    assert_eq!(v["balance"]["embedded"], serde_json::json!([0]));
    assert_eq!(v["balance"]["mu_along_w"], serde_json::json!([12]));
    let inconsistent = [
        "balance",
        "--n",
        "3",
        "--k",
        "2",
        "--nu",
        "-12",
        "--embedded",
        "1",
        "--sum-isolated",
        "3",
    ];
    assert_eq!(code(&inconsistent), 1);
    let (_, v) = json(&["ell", "--field", &path("example41-m2.txt")]);
    assert_eq!(v["exceptional"]["ell"], 1);
    let (_, v) = json(&["totally-simple", "--field", &path("example43.txt")]);
    assert_eq!(v["totally_simple"], true);
    let (_, v) = json(&["totally-simple", "--field", &path("example41-m2.txt")]);
    assert_eq!(v["totally_simple"], false);
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let (status, v) = json(&["check", "43"]);
    assert_eq!(status, 0);
    assert_eq!(v["pass"], true);
    let (status, v) = json(&["check", "42"]);
    assert_eq!(status, 1);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["trajectories to P"]);
    assert_eq!(code(&["check", "41"]), 0);
}

fn same_family(m: &Manifest, family: &DeformationFamily, w: &CompleteIntersection) {
    assert_eq!(&m.field, &family.base);
    assert_eq!(m.direction.as_ref(), Some(&family.direction));
    assert_eq!(m.w.as_ref(), Some(w));
}

#[test]
fn shipped_manifests_match_the_catalog() {
    let read = |name: &str| Manifest::parse(&fs::read_to_string(manifest(name)).unwrap()).unwrap();
    let line = example41(LineParams::generic(2, 7)).unwrap();
    same_family(&read("example41-m2.txt"), &line.family, &line.w);
    let cubic = example42(CubicParams::default()).unwrap();
    same_family(&read("example42.txt"), &cubic.family, &cubic.w);
    same_family(
        &read("example42-translation.txt"),
        &cubic.translation,
        &cubic.w,
    );
    let rotation = example43(RotationParams::special()).unwrap();
    same_family(&read("example43.txt"), &rotation.family, &rotation.w);
}

#[test]
fn manifest_deform_matches_the_named_family() {
    let (_, named) = json(&["deform", "--family", "example42-translation"]);
    let (_, from_file) = json(&["deform", "--family", &path("example42-translation.txt")]);
    assert_eq!(named["per_t"], from_file["per_t"]);
    assert_eq!(named["mu_along_W"], from_file["mu_along_W"]);
}
