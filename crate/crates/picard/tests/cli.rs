//! End-to-end smoke tests of the `picard` binary: exit codes, output
//! formats, and the documented pairing examples.

use std::process::{Command, Output};

fn picard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picard"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn pair_examples() {
    let out = picard(&["pair", "r_T[{1,2}]", "phi*(bn[11])"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).trim(), "0");

    let out = picard(&["pair", "lefschetz_k3[10]", "K3class10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-1");

    let out = picard(&["pair", "abel_jacobi_pencil[5]", "Lt"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn eval_formats_and_params() {
    let out = picard(&["eval", "K", "--g", "4", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("13*L"), "{}", stdout(&out));

    let out = picard(&["eval", "K3class10", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(v.get("entries").is_some() || v.is_object());

    // substituting the parameter bound produces a numeric class
    let out = picard(&["eval", "K3class10", "--param", "b5=6", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("b5"), "{}", stdout(&out));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let out = picard(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = picard(&["eval", "13*L + ?", "--g", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("column"), "{err}");

    let out = picard(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suite_exit_and_formats() {
    let out = picard(&["verify", "--suite", "slope", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("id\t"));
    assert!(text.contains("slope/K3class10"));
    assert!(!text.contains("FAIL\n"), "{text}");

    // reports are byte-identical across runs
    let again = picard(&["verify", "--suite", "slope", "--format", "tsv"]);
    assert_eq!(text, stdout(&again));

    let out = picard(&["verify", "--suite", "node7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn certify_verdict_exit_codes() {
    // genus-9 single-curve certificate passes
    let out = picard(&[
        "certify",
        "uniruled-single",
        "--curve",
        "g9_pencil",
        "--class",
        "phi*(bn[9])",
        "--class",
        "K",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verdict: pass"));

    // genus-8 pair certificate fails at n = 13
    let out = picard(&[
        "certify",
        "uniruled-pair",
        "--curve",
        "g8_gamma1[13]",
        "--curve",
        "g8_gamma2[13]",
        "--class",
        "phi*(bn8double)",
        "--class",
        "d_irr",
        "--class",
        "K",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn decompose_registry_and_curve_listings() {
    let out = picard(&["decompose", "13", "bn[13]"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("surplus: 2/7"), "{}", stdout(&out));

    let out = picard(&["registry", "list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("bn11"));

    let out = picard(&["registry", "show", "Dtilde[9]"]);
    assert_eq!(out.status.code(), Some(0));

    let out = picard(&["curve", "list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("r_T"));

    let out = picard(&["curve", "show", "gamma_ij[5,1,2]", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["name"], "gamma_ij");
}
