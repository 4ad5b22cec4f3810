use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cfclab(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cfclab"))
        .args(args)
        .env_remove("CFCLAB_BUDGET")
        .env_remove("CFCLAB_MAX_N")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn path_of_eight_decomposes_in_three_rounds() {
    let tree = stdout(&cfclab(&["gen", "path", "8"], ""));
    let out = cfclab(&["decompose"], &tree);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["d"], 3);
    assert_eq!(v["rounds"].as_array().unwrap().len(), 3);
    assert_eq!(v["coloring"].as_array().unwrap().len(), 7);
}

#[test]
fn certificates_verify() {
    for (family, k) in [("Q", "4"), ("R", "4"), ("binomial", "4"), ("star", "5")] {
        let gen = cfclab(&["gen", family, k, "--certificate"], "");
        assert!(gen.status.success(), "{family}");
        let out = cfclab(&["verify"], &stdout(&gen));
        assert_eq!(out.status.code(), Some(0), "{family}");
        assert_eq!(stdout(&out), "VALID\n");
    }
}

#[test]
fn certificate_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let cpath = dir.path().join("q.col");
    let tpath = dir.path().join("q.txt");
    let gen = cfclab(&["gen", "Q", "3", "--certificate", cpath.to_str().unwrap()], "");
    std::fs::write(&tpath, stdout(&gen)).unwrap();
    let out = cfclab(
        &["verify", tpath.to_str().unwrap(), "--coloring", cpath.to_str().unwrap()],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_coloring_prints_witness() {
    let input = "4 3\n0 1\n1 2\n2 3\n0 1\n1 2\n2 2\n";
    let out = cfclab(&["verify"], input);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "WITNESS 1 3\n");
    let out = cfclab(&["verify", "--format", "json"], input);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["witness"], serde_json::json!([1, 3]));
}

#[test]
fn ranking_mode_reports_edges() {
    let input = "4 3\n0 1\n1 2\n2 3\n0 1\n1 1\n2 2\n";
    let out = cfclab(&["verify", "--mode", "ranking"], input);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "WITNESS 0 1\n");
}

#[test]
fn canonical_output_round_trips_byte_for_byte() {
    let first = stdout(&cfclab(&["gen", "random", "12", "--seed", "42", "--canonical"], ""));
    let again = stdout(&cfclab(&["gen", "random", "12", "--seed", "42", "--canonical"], ""));
    assert_eq!(first, again);
    let tree = cfclab::io::read_tree(&first).unwrap();
    assert_eq!(cfclab::io::write_tree(&tree), first);
}

#[test]
fn exact_reports_json() {
    let tree = stdout(&cfclab(&["gen", "star", "4"], ""));
    let out = cfclab(&["exact", "cfc"], &tree);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 4);
    assert_eq!(v["certificate"].as_array().unwrap().len(), 4);
    for key in ["lb", "ub", "closed_form", "nodes"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn budget_exhaustion_exits_three() {
    let tree = stdout(&cfclab(&["gen", "complete_binary", "4"], ""));
    let out = cfclab(&["exact", "cfc", "--budget", "10"], &tree);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(cfclab(&["verify"], "3 3\n0 1\n1 2\n2 0\n").status.code(), Some(1));
    assert_eq!(cfclab(&["gen", "nonsense", "3"], "").status.code(), Some(1));
    assert_eq!(cfclab(&["frobnicate"], "").status.code(), Some(1));
}

#[test]
fn sweep_is_deterministic() {
    let args = ["sweep", "--count", "8", "--n-max", "9", "--seed", "5"];
    let a = cfclab(&args, "");
    let b = cfclab(&args, "");
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let lines: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 8);
    let rec: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(rec["v"], 1);
}

#[test]
fn family_sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("paths.jsonl");
    let out = cfclab(
        &["sweep", "--family", "path", "--k-min", "2", "--k-max", "6", "--out", path.to_str().unwrap()],
        "",
    );
    assert!(out.status.success());
    let records = cfclab::sweep::from_jsonl(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(records.len(), 5);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["records"], 5);
}

#[test]
fn bounds_on_a_graph() {
    // triangle with a pendant path of length 3
    let g = "6 6\n0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n";
    let out = cfclab(&["bounds"], g);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["h"], 2);
}

#[test]
fn dot_export() {
    let tree = stdout(&cfclab(&["gen", "path", "5"], ""));
    let out = stdout(&cfclab(&["decompose", "--format", "dot"], &tree));
    assert!(out.starts_with("graph"));
    assert!(out.contains("penwidth"));
}
