use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn orient(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orient"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

const TRIANGLE_PENDANT: &str = "p graph 4 4\ne 1 2\ne 2 3\ne 3 1\ne 3 4\n";

#[test]
fn max_orient_reports_nine_and_verifies() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", TRIANGLE_PENDANT);
    let out = orient(&["--format", "json", "max-orient", s(&g), "--verify"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["command"], "max-orient");
    assert_eq!(report["result"]["R"], 9);
    assert_eq!(report["result"]["verified"], true);
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn emitted_orientations_pass_check() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "p graph 6 7\ne 1 2\ne 2 3\ne 3 1\ne 4 5\ne 5 6\ne 6 4\ne 3 4\n");
    for cmd in ["max-orient", "min-orient", "strong-orient"] {
        let out = orient(&[cmd, s(&g)]);
        if cmd == "strong-orient" {
            assert_eq!(out.status.code(), Some(3), "bridge 3 4");
            continue;
        }
        assert!(out.status.success(), "{cmd}");
        let listing = write(&dir, "o.txt", &stdout(&out));
        let checked = orient(&["--format", "json", "check", s(&listing)]);
        assert!(checked.status.success(), "{cmd}");
        assert_eq!(json(&checked)["result"]["matches"], true);
    }
    let bridgeless = write(&dir, "c.txt", "p graph 4 5\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 1 3\n");
    let out = orient(&["strong-orient", s(&bridgeless)]);
    let listing = write(&dir, "s.txt", &stdout(&out));
    let checked = json(&orient(&["--format", "json", "check", s(&listing)]));
    assert_eq!(checked["result"]["strong"], true);
    assert_eq!(checked["result"]["R"], 12);
}

#[test]
fn check_rejects_a_false_claim() {
    let dir = TempDir::new().unwrap();
    let listing = write(&dir, "o.txt", "p mixed 3 2\na 1 2\na 2 3\nR 4\n");
    let out = orient(&["check", s(&listing)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("c R 3"));
}

#[test]
fn wto_matches_oracle_and_checks() {
    let dir = TempDir::new().unwrap();
    let gen = orient(&["gen", "tree", "--b", "14", "--seed", "5"]);
    let t = write(&dir, "t.txt", &stdout(&gen));
    let out = orient(&["--format", "json", "wto", s(&t), "--oracle"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["result"]["matches_oracle"], true);
    let listing = write(&dir, "o.txt", report["result"]["listing"].as_str().unwrap());
    let checked = orient(&["check", s(&listing), "--tree", s(&t)]);
    assert!(checked.status.success());
}

#[test]
fn wto_forced_approximation_is_flagged() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.txt", "p wtree 3\nv 1 2\nv 2 1\nv 3 1\ne 1 2\ne 1 3\n");
    let out = orient(&["--format", "json", "wto", s(&t), "--epsilon", "1/20", "--exact-budget", "0"]);
    let report = json(&out);
    assert_eq!(report["result"]["mu"], 5);
    assert_eq!(report["result"]["guarantee"]["kind"], "approximate");
    assert_eq!(report["result"]["guarantee"]["epsilon"], 0.05);
}

#[test]
fn complete_extends_single_arc_cycle() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "p mixed 4 4\na 1 2\ne 2 3\ne 3 4\ne 4 1\n");
    let dot = dir.path().join("o.dot");
    let out = orient(&["--dot", s(&dot), "complete", s(&m)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("R 12"));
    assert!(fs::read_to_string(&dot).unwrap().contains("1 -> 2;"));
}

#[test]
fn complete_reports_one_way_cut() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "p mixed 4 4\na 1 2\ne 2 3\na 4 3\ne 4 1\n");
    let out = orient(&["--format", "json", "complete", s(&m)]);
    assert_eq!(out.status.code(), Some(3));
    let w = &json(&out)["result"]["witness"];
    assert_eq!(w["kind"], "one_way_cut");
    assert_eq!(w["side"], serde_json::json!([1, 4]));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "p graph 2 1\ne 1 1\n");
    assert_eq!(orient(&["max-orient", s(&bad)]).status.code(), Some(2));
    let disconnected = write(&dir, "d.txt", "p graph 3 1\ne 1 2\n");
    assert_eq!(orient(&["max-orient", s(&disconnected)]).status.code(), Some(3));
    let big = stdout(&orient(&["gen", "graph", "--n", "30", "--m", "40"]));
    let big = write(&dir, "big.txt", &big);
    assert_eq!(orient(&["oracle", "graph", s(&big)]).status.code(), Some(4));
    assert_eq!(orient(&["min-orient", s(&big), "--max-n", "8"]).status.code(), Some(4));
    assert_eq!(orient(&["max-orient", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn single_vertex_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "p graph 1 0\n");
    let out = orient(&["max-orient", s(&g)]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("R 0\n"));
}

#[test]
fn one_clause_gadget_has_21_vertices_24_edges() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "c.cnf", "p cnf 3 1\n1 2 -3 0\n");
    let ann = dir.path().join("ann.json");
    let out = orient(&["--format", "json", "gadget", "nae3sat", s(&cnf), "--annotations", s(&ann)]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["result"]["vertices"], 21);
    assert_eq!(report["result"]["edges"], 24);
    let ann: Value = serde_json::from_str(&fs::read_to_string(ann).unwrap()).unwrap();
    assert_eq!(ann["variables"].as_array().unwrap().len(), 3);
    assert_eq!(ann["clauses"][0]["cycle"].as_array().unwrap().len(), 9);

    let sat = orient(&["--format", "json", "gadget", "nae3sat", s(&cnf), "--assignment", "100"]);
    let r = &json(&sat)["result"];
    assert_eq!(r["nae_satisfied"], 1);
    assert_eq!(r["R"], 25);
    assert_eq!(r["R"], r["expected_R"]);
}

#[test]
fn partition_gadget_threshold() {
    let yes = json(&orient(&["--format", "json", "gadget", "partition", "3", "1", "2", "--solve"]));
    assert_eq!(yes["result"]["threshold"], 45);
    assert_eq!(yes["result"]["equal_split"], true);
    let no = json(&orient(&["--format", "json", "gadget", "partition", "3", "1", "1", "--solve"]));
    assert_eq!(no["result"]["odd_sum"], true);
    assert_eq!(no["result"]["equal_split"], false);
}

#[test]
fn oracle_min_identity_on_five_cycle() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", "p graph 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    let out = json(&orient(&["--format", "json", "oracle", "min", s(&c5)]));
    assert_eq!(out["result"]["r"], 6);
    assert_eq!(out["result"]["c_bar"], 1);
    let fast = json(&orient(&["--format", "json", "min-orient", s(&c5)]));
    assert_eq!(fast["result"]["r"], 6);
    assert_eq!(fast["result"]["acyclic"], true);
}

#[test]
fn generators_are_seeded() {
    let a = stdout(&orient(&["gen", "cnf", "--vars", "5", "--clauses", "4", "--seed", "9"]));
    let b = stdout(&orient(&["gen", "cnf", "--vars", "5", "--clauses", "4", "--seed", "9"]));
    assert_eq!(a, b);
    assert!(a.starts_with("p cnf 5 4\n"));
}

#[test]
fn reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_orient"))
        .args(["max-orient", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(TRIANGLE_PENDANT.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(stdout(&out).ends_with("R 9\n"));
}
