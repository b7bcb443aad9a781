use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn stanley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stanley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const EXAMPLE: &str = r#"{"n":4,"generators":[[1,2],[1,3],[2,3,4]]}"#;

#[test]
fn depth_reports_pd_and_both_depths() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "i.json", EXAMPLE);
    for field in ["Q", "Fp"] {
        let out = stanley(&["depth", "--input", &input, "--field", field]);
        assert!(out.status.success());
        let v = json_of(&out);
        assert_eq!(v["pd"], 2);
        assert_eq!(v["depth_quotient"], 2);
        assert_eq!(v["depth_ideal"], 3);
    }
}

#[test]
fn sdepth_prints_value_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "i.json", EXAMPLE);
    let out = stanley(&["sdepth", "--input", &input, "--kind", "ideal"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert!(v["sdepth"].as_u64().unwrap() >= 3);
    assert!(!v["certificate"].as_array().unwrap().is_empty());
    let out = stanley(&[
        "sdepth", "--input", &input, "--kind", "quotient", "--max-n", "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "cap below the ring size is a usage error"
    );
}

#[test]
fn sv_search_and_witness_check() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "i.json", EXAMPLE);
    let out = stanley(&["sv", "--input", &input]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["sv_restricted"], 2);

    let good = write(
        &dir,
        "good.json",
        r#"[[[1,2]],[{"exps":[1,0,1,0]},[2,3,4]]]"#,
    );
    let out = stanley(&["sv", "--input", &input, "--witness", &good]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["valid"], true);

    let bad = write(&dir, "bad.json", r#"[[[1,2],[1,3]],[[2,3,4]]]"#);
    let out = stanley(&["sv", "--input", &input, "--witness", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["valid"], false);
}

#[test]
fn chordal_and_lq_on_clutters() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(&dir, "c.json", r#"{"n":3,"edges":[[1,2,3]]}"#);
    let out = stanley(&["chordal", "--input", &tri, "--d", "2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["chordal"], true);
    assert_eq!(v["ideal"]["generators"].as_array().unwrap().len(), 3);

    let out = stanley(&["lq", "--input", &tri, "--d", "2"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["depth_quotient"], 1);

    let c5 = write(
        &dir,
        "c5.json",
        r#"{"n":5,"edges":[[1,2],[2,3],[3,4],[4,5],[1,5]]}"#,
    );
    let out = stanley(&["chordal", "--input", &c5]);
    assert_eq!(json_of(&out)["chordal"], false);
}

#[test]
fn lq_search_on_an_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "i.json", EXAMPLE);
    let out = stanley(&["lq", "--input", &input]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["pd"], 2);
    // (x1x2, x3x4) has no linear quotients
    let split = write(&dir, "s.json", r#"{"n":4,"generators":[[1,2],[3,4]]}"#);
    assert!(json_of(&stanley(&["lq", "--input", &split]))["order"].is_null());
}

#[test]
fn general_ideals_are_polarized() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        &dir,
        "g.json",
        r#"{"n":2,"generators":[{"exps":[2,0]},{"exps":[1,1]}]}"#,
    );
    let out = stanley(&["depth", "--input", &input]);
    assert!(out.status.success());
    // (x^2, xy) polarizes to (x1 x2, x1 y) in three variables
    assert_eq!(json_of(&out)["depth_quotient"], 1);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        stanley(&["depth", "--input", "/nonexistent/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(stanley(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.json", r#"{"n":2,"generators":[[3]]}"#);
    assert_eq!(stanley(&["depth", "--input", &bad]).status.code(), Some(2));
}

#[test]
fn examples_pass() {
    let out = stanley(&["examples"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v[0]["sv_restricted"], 2);
    assert_eq!(v[1]["sv_restricted"], 3);
}

#[test]
fn gen_emits_replayable_instances() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("inst.json");
    let out = stanley(&[
        "gen",
        "--max-n",
        "4",
        "--d",
        "2",
        "--count",
        "3",
        "--json-out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = stanley(&["verify", "--input", out_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json_of(&out);
    assert!(report["summary"]["main_instances"].as_u64().unwrap() >= 1);
}

#[test]
fn failing_instance_writes_a_bundle_that_replays() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        &dir,
        "c5.json",
        r#"{"id":"c5","source":"file","clutter":{"n":5,"edges":[[1,2],[2,3],[3,4],[4,5],[1,5]]},"d":2}"#,
    );
    let report = dir.path().join("report.json");
    let out = stanley(&[
        "verify",
        "--input",
        &input,
        "--json-out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let bundle = dir.path().join("counterexample-c5.json");
    assert!(String::from_utf8_lossy(&out.stderr).contains("counterexample-c5.json"));
    let b: Value = serde_json::from_str(&fs::read_to_string(&bundle).unwrap()).unwrap();
    assert_eq!(b["section"], "main");
    assert!(b["certificates"]["chordality"].is_object());

    let replay = stanley(&["verify", "--input", bundle.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(1));
    let record = json_of(&replay);
    assert_eq!(record["checks"], b["record"]["checks"]);
}

#[test]
fn small_sweep_is_deterministic() {
    let args = [
        "verify",
        "--seed",
        "3",
        "--max-n",
        "4",
        "--ideals",
        "20",
        "--per-cell",
        "4",
    ];
    let a = stanley(&args);
    let b = stanley(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
