use std::process::{Command, Output};

fn ssgenus4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssgenus4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn field_prints_config() {
    let o = ssgenus4(&["field", "--n", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["n"], 11);
    assert_eq!(v["modulus_hex"], "0x805");
    assert_eq!(v["trace_mask_hex"], "0x201");

    let o = ssgenus4(&[
        "field",
        "--n",
        "11",
        "--modulus",
        "0x82b",
        "--primitive",
        "0x2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"primitive_hex\":\"0x2\""));
}

#[test]
fn bad_field_arguments_are_usage_errors() {
    for args in [
        &["field", "--n", "4"][..],
        &["field", "--n", "11", "--modulus", "0x809"],
        &["field", "--n", "11", "--modulus", "0x83"],
        &["field", "--n", "11", "--modulus", "zz"],
        &["field", "--n", "65"],
        &["frobnicate"],
    ] {
        let o = ssgenus4(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn examples_report_sign_mismatch() {
    let o = ssgenus4(&["examples", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let rows: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 4);
    let got: Vec<i64> = rows.iter().map(|r| r["got"].as_i64().unwrap()).collect();
    let expected: Vec<i64> = rows
        .iter()
        .map(|r| r["expected"].as_i64().unwrap())
        .collect();
    assert_eq!(got, [-256, 256, -128, 128]);
    assert_eq!(expected, [256, -256, 128, -128]);
    for r in &rows {
        assert_eq!(r["frobenius_trace"], r["expected"]);
    }
}

#[test]
fn examples_under_another_modulus_still_run() {
    let o = ssgenus4(&["examples", "--modulus", "0x82b"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 5);
    assert_eq!(
        ssgenus4(&["examples", "--modulus", "0x809"]).status.code(),
        Some(2)
    );
}

#[test]
fn classify_golden_curve() {
    // x^9 + w^512 x^5 + w^118 x^3 with w = x modulo x^11 + x^2 + 1
    let field = ssgenus4::FieldSpec::golden_n11();
    let w = |e| field.primitive_pow(e).unwrap().to_hex();
    let (a, b) = (w(512), w(118));
    let o = ssgenus4(&["classify", "--n", "11", "--f", "0x1", "--a", &a, "--b", &b]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["S"], -256);
    assert_eq!(v["N"], "1793");
    assert_eq!(v["w"], 5);
    assert_eq!(v["q_vanishes_on_W"], true);
    assert_eq!(v["consistent"], true);
}

#[test]
fn classify_rejects_degenerate_input() {
    assert_eq!(
        ssgenus4(&["classify", "--n", "5", "--f", "0x0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ssgenus4(&["classify", "--n", "5", "--f", "0x40"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ssgenus4(&["classify", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn exhaustive_scan_summary() {
    let o = ssgenus4(&["scan", "--n", "3", "--mode", "exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["curves_scanned"], "7168");
    assert_eq!(v["violation_count"], 0);
    let keys: Vec<&String> = v["spectrum"].as_object().unwrap().keys().collect();
    assert!(keys
        .iter()
        .all(|k| ["-8", "-4", "0", "4", "8"].contains(&k.as_str())));
}

#[test]
fn scan_limits_are_usage_errors() {
    assert_eq!(
        ssgenus4(&["scan", "--n", "9", "--mode", "exhaustive"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ssgenus4(&["scan", "--n", "4", "--mode", "sample"])
            .status
            .code(),
        Some(2)
    );
    let o = ssgenus4(&[
        "scan",
        "--n",
        "3",
        "--mode",
        "exhaustive",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seeded_scan_files_match_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let path = dir.path().join(name);
        let o = ssgenus4(&[
            "scan",
            "--n",
            "7",
            "--mode",
            "sample",
            "--samples",
            "500",
            "--seed",
            "42",
            "--workers",
            workers,
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        (stdout(&o), std::fs::read_to_string(path).unwrap())
    };
    let (summary1, csv1) = run("one.csv", "1");
    let (summary4, csv4) = run("four.csv", "4");
    assert_eq!(summary1, summary4);
    assert_eq!(csv1, csv4);
    assert_eq!(
        csv1.lines().next(),
        Some("f,a,b,c,d,S,N,w,q_vanishes_on_W,consistent")
    );
    assert_eq!(csv1.lines().count(), 1001);
}

#[test]
fn zeta_rows_and_cross_check() {
    let o = ssgenus4(&["zeta", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("multiset_label,a1,a1_over_sqrt2q,survives_serre")
    );
    assert!(text.lines().any(|l| l == "L2tp^3*L2z,12,3,true"));
    assert!(text.lines().any(|l| l == "L2tm^3*L2z,-12,-3,true"));
    assert!(text.lines().last().unwrap().contains("{-3,3}"));
    assert_eq!(
        ssgenus4(&["zeta", "--n", "3", "--degree", "7"])
            .status
            .code(),
        Some(2)
    );
}
