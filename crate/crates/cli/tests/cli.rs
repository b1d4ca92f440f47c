//! Runs the built binary: text output against files in `tests/golden`
//! (regenerate with `UPDATE_GOLDEN=1`), JSON output against the schema.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("exp_nagata_half", &["exp", "--derivation", "nagata", "--lambda", "1/2"]),
    ("exp_gf9", &["--field", "GF(9)", "exp", "--derivation", "[Y; 1]"]),
    ("gradings_nagata", &["gradings", "--derivation", "nagata"]),
    ("gradings_partial", &["gradings", "--derivation", "[1]"]),
    (
        "shift_2i",
        &["shift-linearize", "--map", "(2*X, 2*Y, 2*Z)", "--lambda", "1"],
    ),
    ("shift_degenerate", &["shift-linearize", "--map", "(8*X, 2*Y, (1/2)*Z)"]),
    (
        "shift_gf5",
        &[
            "--field",
            "GF(5)",
            "shift-linearize",
            "--map",
            "(2*X, 2*Y, 2*Z)",
            "--lambda",
            "3",
        ],
    ),
    ("fixed_l2n_8", &["fixed-space", "--map", "L2N", "--degree", "8"]),
    ("profile_l2n_8", &["fixed-space", "--map", "L2N", "--profile", "8"]),
    (
        "fixed_2n_eigen",
        &["fixed-space", "--map", "2N", "--mu", "4", "--degree", "2"],
    ),
    (
        "fixed_word",
        &[
            "fixed-space",
            "--map",
            "E[1; Y^2] E[2; 1]",
            "--vars",
            "2",
            "--degree",
            "3",
        ],
    ),
    ("parity_gf4", &["parity", "--q", "4", "--n", "2", "--samples", "200"]),
    ("parity_gf3", &["parity", "--q", "3", "--n", "2", "--samples", "200"]),
    (
        "parity_gf4_fiberwise",
        &["parity", "--q", "4", "--n", "3", "--samples", "50", "--fiberwise"],
    ),
    ("verify_all", &["verify"]),
];

#[test]
fn text_output_matches_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in GOLDEN {
        let out = run(args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let got = String::from_utf8(out.stdout).unwrap();
        let path = golden_dir().join(format!("{name}.txt"));
        if update {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        if got != want {
            mismatches.push(format!("--- {name}\nexpected:\n{want}\ngot:\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

fn schema() -> jsonschema::Validator {
    let text = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("valid schema")
}

fn json_of(args: &[&str]) -> (bool, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    (
        out.status.success(),
        serde_json::from_slice(&out.stdout).expect("stdout is JSON"),
    )
}

#[test]
fn json_output_conforms_to_schema() {
    let validator = schema();
    let mut cases: Vec<&[&str]> = GOLDEN.iter().map(|(_, a)| *a).collect();
    cases.push(&["exp", "--derivation", "[X; 0]"]);
    cases.push(&["fixed-space", "--map", "(X +", "--degree", "2"]);
    cases.push(&["--field", "GF(16)", "gradings", "--derivation", "[1]"]);
    for args in cases {
        let (_, v) = json_of(args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v:#}");
    }
}

#[test]
fn schema_rejects_malformed_output() {
    let validator = schema();
    let (_, mut v) = json_of(&["parity", "--q", "4", "--samples", "5"]);
    v.as_object_mut().unwrap().remove("evenCount");
    assert!(!validator.is_valid(&v));
    let (_, mut v) = json_of(&["shift-linearize", "--map", "(2*X, 2*Y, 2*Z)"]);
    v["conjugator"] = serde_json::json!(-1.333);
    assert!(!validator.is_valid(&v));
}

#[test]
fn exact_values_in_json() {
    let (ok, v) = json_of(&["shift-linearize", "--map", "(2*X, 2*Y, 2*Z)", "--lambda", "1"]);
    assert!(ok);
    assert_eq!(v["conjugator"], "-4/3");
    assert_eq!(v["conjugationScalar"], "1/4");
    assert_eq!(v["verified"], true);
    assert_eq!(v["conjugatedMap"], serde_json::json!(["2*X", "2*Y", "2*Z"]));

    let (ok, v) = json_of(&["fixed-space", "--map", "L2N", "--profile", "8"]);
    assert!(ok);
    assert_eq!(v["profile"], serde_json::json!([1, 1, 1, 1, 2, 2, 2, 2, 3]));

    let (ok, v) = json_of(&["gradings", "--derivation", "nagata"]);
    assert!(ok);
    assert_eq!(v["basis"][1]["weights"], serde_json::json!(["0", "1", "2"]));
}

#[test]
fn parity_reports_are_seeded() {
    let a = json_of(&["--seed", "7", "parity", "--q", "3", "--samples", "40"]).1;
    let b = json_of(&["--seed", "7", "parity", "--q", "3", "--samples", "40"]).1;
    let c = json_of(&["--seed", "8", "parity", "--q", "3", "--samples", "40"]).1;
    assert_eq!(a, b);
    assert_ne!(a["witnesses"], c["witnesses"]);
    assert_eq!(a["evenCount"].as_u64().unwrap() + a["oddCount"].as_u64().unwrap(), 40);
}

#[test]
fn failures_exit_nonzero() {
    for args in [
        &["exp", "--derivation", "[X; 0]"][..],
        &["--field", "GF(2)", "exp", "--derivation", "nagata"],
        &["--field", "GF(16)", "gradings", "--derivation", "[1]"],
        &["fixed-space", "--map", "(X +", "--degree", "2"],
        &["shift-linearize", "--map", "(X + Y, Y, Z)"],
        &["parity", "--q", "6"],
        &["parity", "--q", "4", "--n", "2", "--fiberwise"],
        &["parity", "--q", "5", "--n", "7"],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
    let out = run(&["verify", "bogus"]);
    assert!(!out.status.success());
}

#[test]
fn each_suite_runs_alone() {
    for suite in ["nagata", "gradings", "fixedspace", "parity", "tame"] {
        let (ok, v) = json_of(&["verify", suite]);
        assert!(ok, "{suite}: {v:#}");
        assert_eq!(v["suites"].as_array().unwrap().len(), 1);
    }
    let out = String::from_utf8(run(&["verify", "nagata"]).stdout).unwrap();
    assert!(out.contains("25/25 conjugation identities hold"));
}
