use std::process::Command;

use diskinv::cli::{run, Output};
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("diskinv").chain(args.iter().copied()))
}

fn line<'a>(out: &'a str, prefix: &str) -> &'a str {
    out.lines()
        .find(|l| l.starts_with(prefix))
        .unwrap_or_else(|| panic!("no {prefix} line in {out}"))
}

#[test]
fn invariants_json_schema() {
    let out = cli(&["invariants", "--degrees", "5", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["geometry"]["degrees"], serde_json::json!([5]));
    assert_eq!(v["geometry"]["n"], 5);
    assert_eq!(v["geometry"]["l"], 1);
    assert_eq!(v["geometry"]["p_max"], 1);
    assert_eq!(v["max_degree"], 9);
    let inv = v["invariants"].as_array().unwrap();
    let ds: Vec<i64> = inv.iter().map(|e| e["d"].as_i64().unwrap()).collect();
    assert_eq!(ds, [1, 3, 5, 7, 9]);
    assert_eq!(inv[0]["value"], "30");
    assert!(inv.iter().all(|e| e["value"].is_string()));
}

#[test]
fn json_output_roundtrips() {
    for args in [
        &["invariants", "--degrees", "3", "3", "--format", "json"][..],
        &[
            "series",
            "--degrees",
            "5",
            "--max-degree",
            "5",
            "--format",
            "json",
        ],
        &[
            "verify",
            "--degrees",
            "3",
            "--max-degree",
            "5",
            "--format",
            "json",
        ],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let once: Value = serde_json::from_str(&out.stdout).unwrap();
        let again: Value =
            serde_json::from_str(&serde_json::to_string_pretty(&once).unwrap()).unwrap();
        assert_eq!(once, again);
        assert_eq!(
            serde_json::to_string_pretty(&once).unwrap(),
            out.stdout.trim_end()
        );
    }
}

#[test]
fn default_command_is_invariants() {
    assert_eq!(
        cli(&["--degrees", "5"]),
        cli(&["invariants", "--degrees", "5"])
    );
}

#[test]
fn plain_and_csv_invariants() {
    let plain = cli(&["--degrees", "3", "--max-degree", "3"]).stdout;
    assert_eq!(line(&plain, "1\t"), "1\t6");
    let csv = cli(&["--degrees", "3", "--max-degree", "3", "--format", "csv"]).stdout;
    assert_eq!(csv.lines().collect::<Vec<_>>(), ["d,value", "1,6", "3,-11"]);
}

#[test]
fn series_spot_values() {
    let out = cli(&["series", "--degrees", "5"]).stdout;
    assert!(line(&out, "I_0:").starts_with("I_0: 1, 120, "));
    assert!(line(&out, "J:").starts_with("J: 0, 770, "));
    assert!(line(&out, "q(Q):").starts_with("q(Q): 0, 1, -770, "));

    let out = cli(&["series", "--degrees", "3"]).stdout;
    let tau: Vec<&str> = line(&out, "tau:")["tau: ".len()..].split(", ").collect();
    assert_eq!(tau.len(), 10);
    for (d, c) in tau.iter().enumerate() {
        assert_eq!(d % 2 == 0, *c == "0", "u^{d} = {c}");
    }
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--degrees", "5", "--seed", "0"][..],
        &["verify", "--degrees", "3", "3", "--seed", "1"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
        assert_eq!(out.stdout.lines().last(), Some("result: PASS"));
    }
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["--degrees", "4"][..],
        &["--degrees", "-3"],
        &["--degrees", "1"],
        &["--degrees", "5", "--max-degree", "4"],
        &["verify", "--degrees", "5", "--weight-samples", "1"],
        &["--degrees", "5", "--format", "xml"],
        &[],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--degrees", "7", "--seed", "42"][..],
        &["series", "--degrees", "3", "5"],
    ] {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_diskinv");
    let ok = Command::new(bin)
        .args(["--degrees", "5", "--max-degree", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().ends_with("1\t30\n"));

    let bad = Command::new(bin).args(["--degrees", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(
        String::from_utf8(bad.stderr).unwrap(),
        "error: degrees must be odd\n"
    );
}
