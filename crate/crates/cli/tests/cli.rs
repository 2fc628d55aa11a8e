use std::path::Path;
use std::process::{Command, Output};

fn mpcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpcover")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn gen(dir: &Path, family: &str) -> String {
    let path = dir.join(format!("{}.json", family.replace([':', '='], "_")));
    let out = mpcover(&["gen", "--family", family, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path.to_str().unwrap().to_string()
}

#[test]
fn fig4_cover_verifies_at_three() {
    let dir = tempfile::tempdir().unwrap();
    let fig4 = gen(dir.path(), "fig4");
    let out = mpcover(&["cover", "--input", &fig4]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verified"], true);

    let cover_path = dir.path().join("cover.json");
    std::fs::write(&cover_path, serde_json::to_string(&v["cover"]).unwrap()).unwrap();
    let check = mpcover(&["verify", "--coloring", &fig4, "--cover", cover_path.to_str().unwrap(), "--d", "3", "--t", "2"]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn fig4_has_no_diameter_two_cover() {
    let dir = tempfile::tempdir().unwrap();
    let fig4 = gen(dir.path(), "fig4");
    let out = mpcover(&["exists", "--coloring", &fig4, "--t", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["exists"], false);
    let out = mpcover(&["exists", "--coloring", &fig4, "--t", "2", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn all_red_cover_and_two_part_warning() {
    let dir = tempfile::tempdir().unwrap();
    let red = dir.path().join("red.json");
    std::fs::write(&red, r#"{"parts": [2, 1, 1], "bits": "00"}"#).unwrap();
    let out = mpcover(&["cover", "--input", red.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["diameter"].as_u64().unwrap() <= 2);

    let two = dir.path().join("two.json");
    std::fs::write(&two, r#"{"parts": [2, 2], "bits": "06"}"#).unwrap();
    let out = mpcover(&["cover", "--input", two.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("three parts"));
}

#[test]
fn compute_d_and_classify() {
    let out = mpcover(&["compute-d", "--parts", "2,1,1", "--threads", "1", "--format", "tsv", "--omit-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!((row[0], row[1], row[2]), ("2,1,1", "2", "1"));
    assert_eq!(row[5], "");

    let out = mpcover(&["classify", "--parts", "7,3,2"]);
    assert_eq!(json(&out)["d"], 3);
    let out = mpcover(&["classify", "--parts", "2,2,2,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["compute-d", "--parts", "2,2,2", "--omit-timing"];
    let a = mpcover(&args);
    let b = mpcover(&["compute-d", "--parts", "2,2,2", "--omit-timing", "--threads", "1"]);
    let v = json(&a);
    assert_eq!(v["result"]["d"], 2);
    // The embedded config records the thread count, so compare the results.
    assert_eq!(v["result"], json(&b)["result"]);
    assert_eq!(a.stdout, mpcover(&args).stdout);
}

#[test]
fn cap_error_exit_code() {
    let out = mpcover(&["compute-d", "--parts", "3,3,3", "--cap-edges", "20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap exceeded"));
}

#[test]
fn ryser_and_fuzz() {
    let dir = tempfile::tempdir().unwrap();
    let small = gen(dir.path(), "thm31:k=2");
    assert_eq!(mpcover(&["ryser", "--coloring", &small]).status.code(), Some(0));
    // 54 edges, beyond the exact solvers' default caps.
    let big = gen(dir.path(), "thm31:k=3");
    assert_eq!(mpcover(&["ryser", "--coloring", &big]).status.code(), Some(2));

    let tri = dir.path().join("tri.json");
    std::fs::write(&tri, r#"{"parts": [1, 1, 1], "bits": "00"}"#).unwrap();
    let out = mpcover(&["ryser", "--coloring", tri.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().iter().all(|c| c["ok"] == true));

    let repro = dir.path().join("repro");
    let out = mpcover(&["fuzz", "--mode", "tc2", "--seed", "5", "--n", "200", "--dump-dir", repro.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn gen_round_trips_with_labels() {
    let dir = tempfile::tempdir().unwrap();
    let fig3 = gen(dir.path(), "fig3");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&fig3).unwrap()).unwrap();
    assert_eq!(v["labels"]["8"], "b4");
    assert_eq!(v["parts"], serde_json::json!([5, 2, 2]));
    let out = mpcover(&["gen", "--family", "thm31:k=1"]);
    assert_eq!(out.status.code(), Some(2));
}
