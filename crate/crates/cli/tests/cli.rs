//! End-to-end checks of the binary: output text, JSON round trips, and exit
//! codes (0 success, 1 verification failure, 2 usage error).

use std::process::{Command, Output};

fn ajf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ajf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid json")
}

#[test]
fn witt_prints_the_rank() {
    let out = ajf(&["witt", "--q", "2", "--s", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "9\n");
    let out = ajf(&["witt", "--q", "2", "--s", "6", "--format", "json"]);
    assert_eq!(json(&out)["rank"], "9");
}

#[test]
fn lyndon_lists_words() {
    let out = ajf(&["lyndon", "--q", "2", "--s", "3"]);
    assert_eq!(stdout(&out), "1,1,2\n1,2,2\n");
    let out = ajf(&["lyndon", "--q", "2", "--s", "3", "--format", "json"]);
    assert_eq!(json(&out)["words"], serde_json::json!([[1, 1, 2], [1, 2, 2]]));
}

#[test]
fn magnus_expansion_text_and_json() {
    let out = ajf(&["magnus", "--n", "2", "--word", "[x1,x2]", "--trunc", "2"]);
    assert_eq!(stdout(&out), "X1X2 - X2X1 + 1\n");
    let out = ajf(&[
        "magnus", "--n", "2", "--word", "[x1,x2]", "--trunc", "2", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v["terms"][0]["monomial"], serde_json::json!([]));
    assert_eq!(v["terms"][0]["coeff"], "1");
    assert_eq!(v["terms"][2]["monomial"], serde_json::json!([2, 1]));
    assert_eq!(v["terms"][2]["coeff"], "-1");
}

#[test]
fn tau_reports_degree_and_values() {
    let out = ajf(&["tau", "--n", "3", "--aut", "[a(3,1),a(3,2)]"]);
    let text = stdout(&out);
    assert!(text.contains("johnson degree: 2"), "{text}");
    assert!(text.contains("x3 -> 1*[x1,[x2,x3]] + 1*[[x1,x3],x2]"), "{text}");
    let out = ajf(&[
        "tau", "--n", "3", "--aut", "[a(3,1),a(3,2)]", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["exact"], true);
    assert_eq!(v["values"]["x3"][0]["word"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["values"]["x3"][0]["coeff"], "1");
    assert_eq!(v["values"]["x1"], serde_json::json!([]));
}

#[test]
fn tau_accepts_rho_and_powers() {
    let out = ajf(&["tau", "--n", "3", "--aut", "rho(1;-1)", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["degree"], 2);
    let out = ajf(&["tau", "--n", "3", "--aut", "a(2,1)^2*A(3,1,2)^-1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("johnson degree: 1"));
}

#[test]
fn tau_of_identity_is_depth_capped() {
    let out = ajf(&["tau", "--n", "3", "--aut", "a(2,1)*a(2,1)^-1", "--cap", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("johnson degree: infinity-capped(4)"), "{text}");
    let out = ajf(&[
        "tau", "--n", "3", "--aut", "a(2,1)*a(2,1)^-1", "--cap", "4", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v["exact"], false);
    assert_eq!(v["values"]["x1"], serde_json::json!([]));
}

#[test]
fn verify_commands_succeed() {
    let out = ajf(&["verify", "mccool", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "OK: 4 relation families, 0 failures\n");

    let out = ajf(&["verify", "commuting", "--n", "4", "--k", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("OK"));

    let out = ajf(&["verify", "prop62", "--n", "4", "--q", "4", "--rs", "1,2,3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified"));

    let out = ajf(&["verify", "prop62", "--n", "3", "--q", "3", "--rs", "1,1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("degenerate"));

    let out = ajf(&[
        "verify", "injectivity", "--n", "4", "--k", "3", "--s", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["expected"], 2);

    let out = ajf(&[
        "verify", "lie-morphism", "--n", "3", "--samples", "5", "--seed", "42",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "OK: 5 samples, 0 failures (seed 42)\n");
}

#[test]
fn seeded_output_is_deterministic() {
    let args = [
        "verify", "lie-morphism", "--n", "4", "--samples", "8", "--seed", "9", "--format",
        "json",
    ];
    assert_eq!(stdout(&ajf(&args)), stdout(&ajf(&args)));
}

#[test]
fn ranks_commands() {
    let out = ajf(&["ranks", "gr", "--n", "4", "--s", "3"]);
    assert_eq!(stdout(&out), "10\n");

    let out = ajf(&["ranks", "summand", "--n", "4", "--k", "3", "--s", "2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["ranks"], serde_json::json!(["1", "2", "1"]));

    let out = ajf(&["ranks", "bound", "--n", "4", "--s", "3", "--i", "1"]);
    assert_eq!(stdout(&out), "8 (attained by summand k=4)\n");

    let out = ajf(&["ranks", "growth", "--n", "3", "--i", "1", "--smax", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s=6: 9"), "{text}");

    let out = ajf(&["ep", "--n", "3", "--smax", "3", "--format", "json"]);
    assert_eq!(json(&out)["coeffs"], serde_json::json!(["9", "24", "54"]));
}

#[test]
fn exit_codes() {
    // usage errors: bad flags, bad expressions, violated preconditions
    let out = ajf(&["witt", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ajf(&["magnus", "--n", "2", "--word", "x9", "--trunc", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = ajf(&["magnus", "--n", "2", "--word", "x1 ? x2", "--trunc", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ajf(&["ranks", "summand", "--n", "4", "--k", "2", "--s", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ajf(&["verify", "prop62", "--n", "3", "--q", "3", "--rs", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ajf(&["tau", "--n", "3", "--aut", "rho(1,2;3)"]);
    assert_eq!(out.status.code(), Some(2));

    // growth over a strictly decreasing window is a verification failure
    let out = ajf(&["ranks", "growth", "--n", "3", "--i", "1", "--smax", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_carry_positions() {
    let out = ajf(&["magnus", "--n", "2", "--word", "x1 ? x2", "--trunc", "2"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte 3"), "{err}");
}

#[test]
fn every_json_output_parses_back() {
    let commands: &[&[&str]] = &[
        &["witt", "--q", "3", "--s", "4"],
        &["lyndon", "--q", "3", "--s", "2"],
        &["magnus", "--n", "3", "--word", "[x1,x3]^2", "--trunc", "3"],
        &["tau", "--n", "3", "--aut", "a(3,1)"],
        &["verify", "mccool", "--n", "3"],
        &["verify", "commuting", "--n", "4", "--k", "2"],
        &["verify", "prop62", "--n", "3", "--q", "3", "--rs", "1,2"],
        &["verify", "injectivity", "--n", "3", "--k", "3", "--s", "2"],
        &["verify", "lie-morphism", "--n", "3", "--samples", "3", "--seed", "5"],
        &["ranks", "gr", "--n", "5", "--s", "2"],
        &["ranks", "summand", "--n", "5", "--k", "4", "--s", "2"],
        &["ranks", "bound", "--n", "4", "--s", "2", "--i", "1"],
        &["ranks", "growth", "--n", "3", "--i", "1", "--smax", "4"],
        &["ep", "--n", "2", "--smax", "4"],
    ];
    for cmd in commands {
        let mut args = cmd.to_vec();
        args.extend_from_slice(&["--format", "json"]);
        let out = ajf(&args);
        assert!(out.status.success(), "{cmd:?}");
        let v = json(&out);
        assert!(v.is_object(), "{cmd:?}");
    }
}
