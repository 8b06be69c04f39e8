use std::process::{Command, Output};

use paraferm::run::{emit_report, Format, Report};
use serde_json::Value;

fn paraferm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paraferm"))
        .args(args)
        .env_remove("PARAFERM_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

fn column(c: &Value, name: &str) -> Vec<u64> {
    c["rows"].as_array().unwrap().iter().map(|r| r["values"][name].as_u64().unwrap()).collect()
}

#[test]
fn zero_level_is_a_usage_error() {
    let out = paraferm(&["--k", "0", "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("level"));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_flags_are_usage_errors() {
    for args in [
        &["--k", "1", "--cutoff", "1"][..],
        &["--k", "1", "--cutoff", "4", "--checks", "thm_9_9"],
        &["--k", "1", "--cutoff", "4", "--workers", "0"],
        &["--k", "1", "--cutoff", "4", "--format", "xml"],
        &["--algebra", "e8", "--k", "1", "--cutoff", "4"],
    ] {
        assert_eq!(paraferm(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn osp2_level1_all_checks() {
    let out = paraferm(&["--algebra", "osp1", "--k", "1", "--cutoff", "5", "--checks", "all"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["schema"], "paraferm-report/1");
    assert_eq!(r["config"]["algebra"], "osp(1|2)");
    assert_eq!(r["config"]["headroom"], 2);
    assert_eq!(r["checks"].as_array().unwrap().len(), 8);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["verdict"], "verified-at-cutoff", "{}", c["id"]);
    }
    let k = column(check(&r, "remark_3_2"), "quotient");
    assert_eq!(&k[..2], &[1, 0]);
    // dim K = dim N − dim Ĩ
    let t = &r["tables"];
    for w in 0..=5 {
        let w = w.to_string();
        let d = |name: &str| t[name]["entries"][&w]["dim"].as_u64().unwrap();
        assert_eq!(d("quotient"), d("commutant") - d("i_tilde"));
    }
}

#[test]
fn sl2_commutant_run() {
    let out = paraferm(&["--algebra", "sl2", "--k", "2", "--cutoff", "4", "--checks", "thm_3_1"]);
    assert!(out.status.success());
    let r = json(&out);
    let c = check(&r, "thm_3_1");
    assert_eq!(c["verdict"], "verified-at-cutoff");
    // charge-zero partitions divided by the Heisenberg character
    assert_eq!(column(c, "target"), vec![1, 0, 1, 2, 4]);
    assert_eq!(column(c, "closure"), vec![1, 0, 1, 2, 4]);
}

#[test]
fn csv_has_one_row_per_check_weight() {
    let json_out = paraferm(&["--k", "1", "--cutoff", "4", "--checks", "thm_2_1,prop_4_3,relations"]);
    let csv_out = paraferm(&["--k", "1", "--cutoff", "4", "--checks", "thm_2_1,prop_4_3,relations", "--format", "csv"]);
    assert!(csv_out.status.success());
    let rows: usize =
        json(&json_out)["checks"].as_array().unwrap().iter().map(|c| c["rows"].as_array().unwrap().len()).sum();
    let text = String::from_utf8(csv_out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,verdict,weight,values"));
    assert_eq!(lines.count(), rows);
    assert!(text.contains("thm_2_1,verified-at-cutoff,2,closure=4;target=4"));
}

#[test]
fn out_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = paraferm(&["--k", "1", "--cutoff", "3", "--checks", "thm_2_1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let bytes = std::fs::read(&path).unwrap();
    let report: Report = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(emit_report(&report, Format::Json).unwrap(), bytes);
}

#[test]
fn unwritable_out_path_fails() {
    let out = paraferm(&["--k", "1", "--cutoff", "3", "--checks", "none", "--out", "/nonexistent/dir/r.json"]);
    assert!(!out.status.success());
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn empty_check_list_reports_config_only() {
    let out = paraferm(&["--algebra", "osp", "--n", "2", "--k", "1", "--cutoff", "3", "--checks", "none"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["config"]["algebra"], "osp(1|4)");
    assert_eq!(r["config"]["rank"], 2);
    assert!(r["checks"].as_array().unwrap().is_empty());
    assert!(r.get("tables").is_none());
}

#[test]
fn worker_count_does_not_change_results() {
    let strip = |o: &Output| {
        let mut v = json(o);
        v.as_object_mut().unwrap().remove("runtime");
        v
    };
    let base = ["--k", "2", "--cutoff", "4", "--checks", "thm_3_1,thm_4_1"];
    let one = paraferm(&[&base[..], &["--workers", "1"]].concat());
    let three = paraferm(&[&base[..], &["--workers", "3"]].concat());
    assert_eq!(strip(&one), strip(&three));
    assert_eq!(json(&three)["runtime"]["workers"], 3);
    let env = Command::new(env!("CARGO_BIN_EXE_paraferm")).args(base).env("PARAFERM_WORKERS", "2").output().unwrap();
    assert_eq!(json(&env)["runtime"]["workers"], 2);
    let bad = Command::new(env!("CARGO_BIN_EXE_paraferm")).args(base).env("PARAFERM_WORKERS", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
