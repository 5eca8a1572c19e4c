use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wkc(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wkc"));
    cmd.args(args).env_remove("WKC_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("WKC_CACHE_DIR", dir);
    }
    cmd.output().expect("wkc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

/// Records without their timing fields.
fn records(v: &Value) -> Vec<Value> {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.as_object_mut().unwrap().remove("seconds");
            r
        })
        .collect()
}

#[test]
fn a23_table_matches() {
    let o = wkc(&["tables", "--which", "a23"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for row in ["2^10     c=3  d=2", "2^8      c=2  d=2"] {
        assert!(text.contains(row), "{text}");
    }
}

#[test]
fn double_coset_count_for_a24() {
    let o = wkc(&["dcosets", "count", "--p", "2", "--k", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("3374"));
}

#[test]
fn failed_check_exits_with_two() {
    // GF(27) computes as a class-2 group of order 3^8, not the abelian 3^6
    // listed among the reference values
    let o = wkc(&["fieldinv", "--q", "27"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("order 3^8, class 2"));
    let ok = wkc(&["fieldinv", "--q", "7", "--json"], None);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["summary"], "abelian, order 7^2");
}

#[test]
fn bad_input_exits_with_one() {
    assert_eq!(wkc(&["fieldinv", "--q", "12"], None).status.code(), Some(1));
    assert_eq!(wkc(&["combinat", "singular", "--matrix", "1,0;0"], None).status.code(), Some(1));
    let o = wkc(&["classify", "--p", "2", "--k", "4"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--stretch"));
}

#[test]
fn json_report_carries_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = wkc(&["combinat", "extract", "--p", "3", "--k", "2", "--f", "(2,3,4)", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["maps"].as_array().unwrap().len(), 2);
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn analyze_reads_a_presentation_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.txt");
    std::fs::write(&path, "< a, b | a^4, a^2 b^-2, b^-1 a b a >").unwrap();
    let o = wkc(&["analyze", "--presentation", path.to_str().unwrap(), "--json"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["analysis"]["order_value"], 8);
    assert_eq!(v["analysis"]["class"], 2);
}

#[test]
fn warm_cache_skips_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["classify", "--p", "3", "--k", "3", "--jobs", "4", "--json"];
    let cold = wkc(&args, Some(dir.path()));
    assert_eq!(cold.status.code(), Some(0), "{}", String::from_utf8_lossy(&cold.stderr));
    let cold = json(&cold);
    assert_eq!(cold["enumerations"], 252);
    let warm = json(&wkc(&args, Some(dir.path())));
    assert_eq!(warm["enumerations"], 0);
    assert_eq!(warm["cache_hits"], 252);
    assert_eq!(records(&cold), records(&warm));
}

#[test]
fn job_count_does_not_change_records() {
    for (p, k) in [("2", "3"), ("3", "2")] {
        let one = json(&wkc(&["classify", "--p", p, "--k", k, "--jobs", "1", "--json"], None));
        let two = json(&wkc(&["classify", "--p", p, "--k", k, "--jobs", "3", "--json"], None));
        assert_eq!(records(&one), records(&two));
    }
}

#[test]
fn csv_has_one_row_per_representative() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a23.csv");
    let o = wkc(&["classify", "--p", "2", "--k", "3", "--csv", csv.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("f,order,class"));
}
