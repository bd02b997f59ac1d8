use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modmethod"))
        .arg("--fixtures")
        .arg(fixtures())
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(rel: &str) -> String {
    fixtures().join(rel).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn trace_genus2_at_three() {
    let o = run(&["trace", &fixture("curves/C_eq51.curve"), "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("RM pair {2 + sqrt2, 2 - sqrt2}"), "{text}");
    assert!(text.contains("RM pair {sqrt2, -sqrt2}"), "{text}");
}

#[test]
fn trace_elliptic_reports_bad_reduction() {
    let o = run(&["--json", "trace", &fixture("curves/E_1_-1.curve"), "2", "5"]);
    assert!(o.status.success());
    let v = json(&o);
    let rows = v["body"]["primes"].as_array().unwrap();
    assert_eq!(rows[0]["bad_reduction"], true);
    let a = rows[1]["trace"].as_i64().unwrap();
    assert!(a * a <= 4 * 25);
    assert_eq!(rows[1]["weil"], true);
}

#[test]
fn euler_and_igusa_and_split() {
    let o = run(&["euler", &fixture("curves/C_eq51.curve"), "3"]);
    assert!(stdout(&o).contains("1 - (4)T + (8)T^2 - (12)T^3 + (9)T^4"), "{}", stdout(&o));
    let o = run(&["igusa", &fixture("curves/C_eq51.curve")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("I10 = ["));
    let o = run(&["--json", "split", "Qsqrt13", "3", "5"]);
    let v = json(&o);
    let keys: Vec<&str> = v["body"]["primes"].as_array().unwrap().iter().map(|p| p["prime"].as_str().unwrap()).collect();
    assert_eq!(keys, ["3.1", "3.2", "5.1"]);
}

#[test]
fn congruence_runs() {
    let e = fixture("curves/E_1_-1.curve");
    let c = fixture("curves/C_eq51.curve");
    let big = run(&["--json", "check-congruence", &e, &c, "--bound", "200"]);
    assert!(big.status.success());
    let big = json(&big);
    assert_eq!(big["checks"][0]["verdict"], "pass");
    let small = json(&run(&["--json", "check-congruence", &e, &c, "--bound", "10"]));
    let keys = |v: &Value| -> Vec<String> {
        v["body"]["checks"].as_array().unwrap().iter().map(|c| c["key"].as_str().unwrap().to_string()).collect()
    };
    let (kb, ks) = (keys(&big), keys(&small));
    assert!(!ks.is_empty() && ks.iter().all(|k| kb.contains(k)));
}

#[test]
fn unrelated_curve_fails_congruence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("other.curve");
    std::fs::write(
        &path,
        r#"{"name": "other", "order": "Qsqrt13", "kind": "weierstrass", "coefficients": [[1, 0], [0, 0], [1, 1], [-3, 2], [5, 0]]}"#,
    )
    .unwrap();
    let o = run(&["check-congruence", path.to_str().unwrap(), &fixture("curves/C_eq51.curve"), "--bound", "30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failure at"));
}

#[test]
fn corrupted_curve_gives_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.curve");
    std::fs::write(&path, "{\"name\": \"x\",\n \"order\": \"Qsqrt13\",\n \"kind\": \"weierstrass\",\n \"coefficients\": [[1, 0],, ]}").unwrap();
    let o = run(&["trace", path.to_str().unwrap(), "3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn sieve_writes_bitset_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let constraints = dir.path().join("c.json");
    std::fs::write(
        &constraints,
        r#"{"constraints": [{"q": 2, "mode": "parity-odd"}, {"q": 11, "mode": "explicit", "pairs": [[1, 10], [3, 4]]}]}"#,
    )
    .unwrap();
    let out = dir.path().join("survivors.bin");
    let o = run(&[
        "--json",
        "sieve",
        "--case",
        "div13",
        "--constraints",
        constraints.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(&bytes[..4], b"USV1");
    assert_eq!(bytes.len(), 8 + 2101);
    let count = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    assert_eq!(json(&o)["body"]["survivors"].as_u64().unwrap(), count as u64);
    let summary = std::fs::read_to_string(out.with_extension("txt")).unwrap();
    assert!(summary.starts_with(&format!("survivors: {count}\n")));
    let bad = run(&["sieve", "--case", "both", "--constraints", constraints.to_str().unwrap()]);
    assert!(!bad.status.success());
}

#[test]
fn shipped_paper_sieves_are_skipped_not_failed() {
    let o = run(&["sieve", "--case", "coprime13", "--constraints", &fixture("constraints/even_2_to_41.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[skipped(external-data)] sieve"));
}

#[test]
fn eliminate_with_legendre_family() {
    let dir = tempfile::tempdir().unwrap();
    let packets = dir.path().join("p.json");
    std::fs::write(
        &packets,
        r#"[{"label": "g", "base_field": "Qsqrt13", "coeff_poly": [0, 1], "eigenvalues": {"5.1": [4], "11.1": [-6]}, "provenance": "test"}]"#,
    )
    .unwrap();
    let o = run(&[
        "--json",
        "eliminate",
        "--family",
        &fixture("families/legendre_qsqrt13.json"),
        "--packets",
        packets.to_str().unwrap(),
        "--q",
        "5,11",
        "--refined",
        "7",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["body"]["packets"][0]["packet"], "g");
    assert_eq!(v["body"]["refined"][0]["p"], 7);
    let ext = run(&[
        "eliminate",
        "--family",
        &fixture("families/frey_E_qsqrt13.json"),
        "--packets",
        packets.to_str().unwrap(),
        "--q",
        "5",
    ]);
    assert!(ext.status.success());
    assert!(stdout(&ext).contains("skipped(external-data)"));
}

#[test]
fn full_report_is_reproducible() {
    let strip = |o: &Output| {
        let mut v = json(o);
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    let a = run(&["--json", "full-report"]);
    let b = run(&["--json", "full-report"]);
    assert_eq!(strip(&a), strip(&b));
    let v = strip(&a);
    let verdicts: Vec<(String, String)> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["id"].as_str().unwrap().to_string(), c["verdict"].as_str().unwrap().to_string()))
        .collect();
    for (id, verdict) in &verdicts {
        let expected = match id.as_str() {
            "6-unit-classes" => "fail",
            "9b-prop32-contradiction" | "10a-descent-sieves" | "10b-sd-elimination" => "skipped(external-data)",
            _ => "pass",
        };
        assert_eq!(verdict, expected, "{id}");
    }
    assert_eq!(verdicts.len(), 12);
    assert!(v["inputs"].as_object().unwrap().keys().any(|k| k.ends_with("C_eq51.curve")));
    assert_eq!(a.status.code(), Some(1));
}
