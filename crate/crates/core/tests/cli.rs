use std::path::Path;
use std::process::{Command, Output};

fn geobip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geobip"))
        .args(args)
        .output()
        .expect("spawn geobip")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const DISJOINT: &str = r#"{"kind":"intervals","objects":[
  {"left":"0","right":"1"},{"left":"2","right":"3"},{"left":"4","right":"5"},{"left":"6","right":"7"}]}"#;

#[test]
fn solve_disjoint_intervals_selects_everything() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.json", DISJOINT);
    let o = geobip(&["solve", &inst]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["selected"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(doc["algorithm"], "interval");
    assert_eq!(doc["problem"], "mbs");
}

#[test]
fn oracle_problems() {
    let dir = tempfile::tempdir().unwrap();
    let tri = r#"{"kind":"unit_disks","disk_radius":"1","objects":[
      {"x":"0","y":"0"},{"x":"1","y":"0"},{"x":"1/2","y":"1/2"},{"x":"10","y":"0"}]}"#;
    let inst = write(dir.path(), "t.json", tri);
    for (problem, size) in [("mbs", 3), ("mtfs", 3), ("mis", 2)] {
        let o = geobip(&["oracle", &inst, "--problem", problem]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(doc["size"], size, "{problem}");
        assert_eq!(doc["problem"], problem);
        let sol = write(dir.path(), &format!("{problem}.json"), &stdout(&o));
        assert_eq!(geobip(&["verify", &inst, &sol]).status.code(), Some(0));
    }
    let o = geobip(&["oracle", &inst, "--cap", "2"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("error: category=capacity"));
}

#[test]
fn reduce_doubles_objects_and_weights() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("w.json");
    let o = geobip(&[
        "generate",
        "--kind",
        "arcs",
        "-n",
        "5",
        "--weighted",
        "-o",
        inst.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = geobip(&["reduce", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let objects = doc["objects"].as_array().unwrap();
    let weights = doc["weights"].as_array().unwrap();
    assert_eq!((objects.len(), weights.len()), (10, 10));
    assert_eq!(objects[0], objects[5]);
    assert_eq!(weights[2], weights[7]);
}

#[test]
fn bench_formats_and_guarantees() {
    let o = geobip(&[
        "bench",
        "--kind",
        "unit_disks",
        "-n",
        "9",
        "--count",
        "4",
        "--algos",
        "three-approx,logn,ptas",
        "--oracle",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("id\talgorithm\tsize\toptimum"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 12);
    let o = geobip(&[
        "bench",
        "--kind",
        "intervals",
        "-n",
        "6",
        "--count",
        "3",
        "--format",
        "json",
        "--oracle",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<u64> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, vec![0, 1, 2]);
    assert_eq!(doc["summary"][0]["violations"], 0);
}

#[test]
fn exit_codes_and_error_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = geobip(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));

    let o = geobip(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(o.status.code(), Some(5));
    let err = stderr(&o);
    assert!(err.starts_with("error: category=io message="), "{err}");
    assert!(err.contains("/nonexistent/instance.json"));

    let bad = write(dir.path(), "bad.json", "{\"kind\": ");
    let o = geobip(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stderr(&o).starts_with("error: category=parse"));

    let inst = write(dir.path(), "i.json", DISJOINT);
    let o = geobip(&["solve", &inst, "--algo", "logn"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error: category=validation"));

    let o = geobip(&["solve", &inst, "--algo", "quantum"]);
    assert_eq!(o.status.code(), Some(2));

    let o = geobip(&["generate", "--kind", "hexagons", "-n", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = geobip(&["generate", "--kind", "arcs", "-n", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_rejects_tampered_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "p.json",
        r#"{"kind":"intervals","objects":[{"left":"0","right":"2"},{"left":"1","right":"3"}]}"#,
    );
    let good = write(
        dir.path(),
        "good.json",
        r#"{"problem":"mbs","algorithm":"x","size":2,"selected":[0,1],"coloring":[0,1]}"#,
    );
    let o = geobip(&["verify", &path, &good]);
    assert_eq!(
        (o.status.code(), stdout(&o).trim()),
        (Some(0), "feasible problem=mbs size=2")
    );
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"problem":"mbs","algorithm":"x","size":2,"selected":[0,1],"coloring":[1,1]}"#,
    );
    let o = geobip(&["verify", &path, &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o).trim(),
        "infeasible problem=mbs witness=monochromatic-edge 0 1"
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(geobip(&["--help"]).status.code(), Some(0));
    assert_eq!(geobip(&["--version"]).status.code(), Some(0));
}
