use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn amvortex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amvortex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn gen_small_indices() {
    let out = amvortex(&["gen", "--n", "2"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(strings(&doc["P"]), ["2", "-2", "1"]);
    assert_eq!(strings(&doc["Q"]), ["0", "1"]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["tool_version"], env!("CARGO_PKG_VERSION"));

    let doc = json_of(&amvortex(&["gen", "--n", "1"]));
    assert_eq!(strings(&doc["P"]), ["0", "1"]);
    assert_eq!(strings(&doc["Q"]), ["1"]);
}

#[test]
fn gen_both_routes_give_normalized_pair() {
    let out = amvortex(&["gen", "--n", "6", "--route", "both"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    let norm = &doc["normalized"];
    assert_eq!(norm["m"], 6);
    assert_eq!(norm["n"], 5);
    let q = strings(&norm["Q"]);
    assert_eq!(q.len(), 6);
    assert_eq!(q[4], "0");
    assert_eq!(norm["shift"], "77/30");
}

#[test]
fn gen_rejects_out_of_range() {
    assert_eq!(amvortex(&["gen", "--n", "0"]).status.code(), Some(3));
    assert_eq!(
        amvortex(&["gen", "--n", "9", "--cap", "8"]).status.code(),
        Some(3)
    );
    assert_eq!(amvortex(&["gen"]).status.code(), Some(3));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["gen", "--n", "5"],
        vec![
            "search", "--m", "3", "--n", "2", "--tries", "60", "--seed", "4",
        ],
        vec!["reduced", "--m", "3", "--n", "2", "--format", "csv"],
    ] {
        let mut files = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("run{k}"));
            let mut full = args.clone();
            full.extend(["--out", path.to_str().unwrap()]);
            assert!(amvortex(&full).status.success(), "{args:?}");
            files.push(fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1], "{args:?}");
    }
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"P": ["2","-2","1"], "Q": ["0","1"]}"#, 0),
        (r#"{"P": ["0","0","0","4","1"], "Q": ["0","1"]}"#, 2),
        (
            r#"{"P": ["0","8/27","-8/9","4/3","-4/3","1"], "Q": ["0","0","0","1"]}"#,
            2,
        ),
        (r#"{"P": ["2","-2","1"]}"#, 3),
    ];
    for (i, (text, code)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("pair{i}.json"));
        fs::write(&path, text).unwrap();
        let out = amvortex(&["certify", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(*code), "{text}");
        if *code != 3 {
            let doc = json_of(&out);
            assert_eq!(doc["all_passed"], *code == 0);
        }
    }
}

#[test]
fn certify_generated_pair_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let gen = json_of(&amvortex(&["gen", "--n", "7"]));
    let path = dir.path().join("pair.json");
    fs::write(&path, serde_json::to_string(&gen["normalized"]).unwrap()).unwrap();
    let out = amvortex(&["certify", path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json_of(&out);
    assert_eq!(doc["m"], 7);
    assert_eq!(doc["n"], 6);
    assert_eq!(doc["preset"], "pq-roots");
}

#[test]
fn search_class_counts() {
    let doc = json_of(&amvortex(&[
        "search", "--m", "2", "--n", "1", "--tries", "100",
    ]));
    assert_eq!(doc["class_count"], 1);
    assert_eq!(doc["classes"][0]["conjugate_symmetric"], true);

    let doc = json_of(&amvortex(&[
        "search", "--m", "3", "--n", "1", "--tries", "200",
    ]));
    assert_eq!(doc["class_count"], 0);

    assert_eq!(
        amvortex(&["search", "--m", "1", "--n", "1"]).status.code(),
        Some(3)
    );
}

#[test]
fn search_csv_layout() {
    let out = amvortex(&[
        "search", "--m", "2", "--n", "1", "--tries", "20", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("class,hits,label,re,im"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn potential_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = amvortex(&[
        "potential",
        "--a",
        "2,0.5",
        "--x1",
        "0.5,3.5,7",
        "--x2",
        "-1,2,4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 7 * 4);
    assert!(text.starts_with("x1,x2,A\n"));
    let meta: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("grid.csv.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["scaling_check"]["passed"], true);
    assert_eq!(meta["tool_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn potential_rejects_bad_points() {
    assert_eq!(
        amvortex(&["potential", "--x1", "-1,1,3"]).status.code(),
        Some(3)
    );
    assert_eq!(
        amvortex(&["potential", "--a", "0,0"]).status.code(),
        Some(3)
    );
    let center = ["potential", "--a", "1,0", "--x1", "1,1,1", "--x2", "0,0,1"];
    assert_eq!(amvortex(&center).status.code(), Some(3));
    assert_eq!(
        amvortex(&["potential", "--x1", "1,2"]).status.code(),
        Some(3)
    );
}

#[test]
fn reduced_row_one_decreases() {
    let out = amvortex(&["reduced", "--m", "2", "--n", "1"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["row_norm1_strictly_decreasing"], true);
    let r = &doc["results"];
    let v = |k: &str| r[k]["row_norm1"].as_f64().unwrap();
    assert!(v("1e-3") > v("1e-5") && v("1e-5") > v("1e-8"));
    assert!((v("1e-5") - 7.084405455215873e-3).abs() < 1e-9);
}

#[test]
fn reduced_rejects_equal_counts() {
    assert_eq!(
        amvortex(&["reduced", "--m", "2", "--n", "2"]).status.code(),
        Some(3)
    );
    assert_eq!(
        amvortex(&["reduced", "--m", "5", "--n", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        amvortex(&["reduced", "--m", "2", "--n", "1", "--eps", "2"])
            .status
            .code(),
        Some(3)
    );
}
