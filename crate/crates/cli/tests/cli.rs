//! End-to-end checks of the command surface: exit codes, report shapes, and
//! validation of the emitted JSON against the shipped schema.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symmetra"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("spawn symmetra");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

const SEXTIC: &str = "x^6 - 15*x^4*y^2 - 2*x^3 + 15*x^2*y^4 + 6*x*y^2 - y^6";

#[test]
fn exit_codes() {
    let (code, _, _) = run(&["symmetries", "x^2 + y^2 - 1"]);
    assert_eq!(code, 0, "no-symmetries / infinite outcomes still succeed");
    let (code, _, err) = run(&["symmetries", "x^"]);
    assert_eq!(code, 1);
    assert!(err.contains("parse error"));
    let (code, _, err) = run(&["symmetries", "x + 0.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("fraction"));
    let (code, _, _) = run(&["nonsense"]);
    assert_ne!(code, 0);
}

#[test]
fn file_input_and_svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let poly_path = dir.path().join("curve.txt");
    std::fs::write(&poly_path, format!("{}\n", SEXTIC)).unwrap();
    let svg_path = dir.path().join("out.svg");
    let (code, _, _) = run(&[
        "symmetries",
        &format!("@{}", poly_path.display()),
        "--svg",
        svg_path.to_str().unwrap(),
        "--window",
        "-2,-2,2,2",
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("class=\"axis\"").count(), 3);
}

#[test]
fn json_reports_validate_against_schema() {
    let schema_text = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json"),
    )
    .unwrap();
    let schema_json: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema_json).unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["symmetries", SEXTIC, "--json"],
        vec![
            "symmetries",
            "1/10*x^5 - 1/2*x^3*y^2 + 1/2*x^2 + 1",
            "--json",
        ],
        vec!["symmetries", "x^2 - 1", "--json"],
        vec!["symmetries", "x^2 + y^2 - 4", "--json"],
        vec!["similar", "x^3 + y - 2", "x^2 + y - 2", "--json"],
        vec!["similar", "x^2 + 2*y^2 - 1", "(x - 1)^2 + 2*(y - 3)^2 - 4", "--json"],
    ];
    for args in cases {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 0, "args {:?} failed: {}", args, stderr);
        let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        let result = compiled.validate(&value);
        if let Err(errors) = result {
            let msgs: Vec<String> = errors.map(|e| format!("{e}")).collect();
            panic!("schema violation for {:?}: {:?}", args, msgs);
        }
    }
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["similar", SEXTIC, SEXTIC, "--json"]);
    let b = run(&["similar", SEXTIC, SEXTIC, "--json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1, "byte-identical reports across runs");
}

#[test]
fn chain_and_assoc_commands() {
    let (code, out, _) = run(&["chain", "1/10*x^5 - 1/2*x^3*y^2 + 1/2*x^2 + 1"]);
    assert_eq!(code, 0);
    assert!(out.contains("lap^1: x^3 - 3*x*y^2 + 1"));
    let (code, out, _) = run(&["assoc", "x^3 - 3*x*y^2 + 1"]);
    assert_eq!(code, 0);
    assert!(out.trim().ends_with("3*z^2"));
    // non-harmonic input to assoc is a domain error -> usage exit code 1
    let (code, _, err) = run(&["assoc", "x^2"]);
    assert_eq!(code, 1);
    assert!(err.contains("harmonic") || err.contains("domain"));
}

#[test]
fn precision_env_is_accepted() {
    let out = bin()
        .env("SYMMETRA_PRECISION_BITS", "128")
        .args(["similar", SEXTIC, SEXTIC, "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin()
        .env("SYMMETRA_PRECISION_BITS", "abc")
        .args(["chain", "x^2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
