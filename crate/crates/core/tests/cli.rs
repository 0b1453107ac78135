use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prim-lattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_prim-lattice"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn flow() -> String {
    fixture("g_flow").display().to_string()
}

fn tail_uv() -> Value {
    json!({"vertices": ["u", "v"], "kind": "cyclic", "cycle": ["a"], "period": 1})
}

#[test]
fn tails_of_flow() {
    let v = ok_json(&run(&["tails", "-g", &flow()]));
    let tails = v.as_array().unwrap();
    assert_eq!(tails.len(), 2);
    assert_eq!(tails[0]["vertices"], json!(["v"]));
    assert_eq!(tails[1], tail_uv());
}

#[test]
fn closure_from_files() {
    let dir = TempDir::new().unwrap();
    let xs = dir.path().join("x.json");
    let target = dir.path().join("t.json");
    std::fs::write(
        &xs,
        json!([{"tail": tail_uv(), "z": "1/4"}, {"tail": tail_uv(), "z": "3/4"}]).to_string(),
    )
    .unwrap();
    std::fs::write(&target, json!({"tail": tail_uv(), "z": "0/1"}).to_string()).unwrap();
    let out = run(&[
        "closure",
        "-g",
        &flow(),
        "-X",
        xs.to_str().unwrap(),
        "--target",
        &format!("@{}", target.display()),
    ]);
    assert_eq!(ok_json(&out), json!({"contained": false}));
}

#[test]
fn gauge_lattice_dot_is_a_chain() {
    let out = run(&["gauge-lattice", "-g", &flow(), "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert!(dot.contains("n0 [label=\"∅\"]"));
    assert!(dot.contains("n2 [label=\"{u,v}\"]"));
    assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
    assert_eq!(dot.matches("->").count(), 2);
}

#[test]
fn graph_from_stdin() {
    let raw = std::fs::read_to_string(fixture("g_flow")).unwrap();
    let v = ok_json(&run_stdin(&["sat-hered", "-g", "@-"], &raw));
    assert_eq!(v, json!([[], ["u"], ["u", "v"]]));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["prims", "-g"],
        vec!["tails", "-g"],
        vec!["oracle", "--samples", "5", "-g"],
    ] {
        let mut full = args.clone();
        let path = flow();
        full.push(&path);
        let first = run(&full);
        let second = run(&full);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn json_round_trips() {
    let path = flow();
    let validated = run(&["validate", "-g", &path]);
    let again = run_stdin(
        &["validate", "-g", "-"],
        std::str::from_utf8(&validated.stdout).unwrap(),
    );
    assert_eq!(validated.stdout, again.stdout);

    let pair = json!({"H": [], "U": [{"cycle": ["a"], "set": [["1/2", "11/10"]]}]}).to_string();
    let meet = run(&["meet", "-g", &path, "--pairs", &format!("[{pair}]")]);
    let printed = String::from_utf8(meet.stdout.clone()).unwrap();
    assert_eq!(
        serde_json::from_str::<Value>(&printed).unwrap(),
        serde_json::from_str::<Value>(&pair).unwrap()
    );
    let twice = run(&["meet", "-g", &path, "--pairs", &format!("[{printed}]")]);
    assert_eq!(meet.stdout, twice.stdout);

    let hull = run(&["hull", "-g", &path, "--pair", &pair]);
    let hull_text = String::from_utf8(hull.stdout).unwrap();
    let back = run(&["from-hull", "-g", &path, "--hull", &hull_text]);
    assert_eq!(back.stdout, meet.stdout);
}

#[test]
fn order_and_containment() {
    let path = flow();
    let left = json!({"H": [], "U": [{"cycle": ["a"], "set": [["0/1", "1/2"]]}]}).to_string();
    let right = json!({"H": ["u"], "U": [{"cycle": ["b"], "set": "empty"}]}).to_string();
    let leq = run(&["leq", "-g", &path, "--left", &left, "--right", &right]);
    assert_eq!(ok_json(&leq), json!({"leq": true}));
    let p = json!({"tail": tail_uv(), "z": "1/4"}).to_string();
    let contains = run(&["contains", "-g", &path, "--pair", &left, "--prim", &p]);
    assert_eq!(ok_json(&contains), json!({"contained": false}));
}

#[test]
fn exit_codes() {
    let path = flow();
    assert_eq!(
        run(&["tails", "-g", "/no/such/graph.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["tails", "-g", "{not json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // {v} is not saturated hereditary in the flow graph
    let bad = json!({"H": ["v"], "U": []}).to_string();
    let out = run(&["hull", "-g", &path, "--pair", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let sourced = json!({"vertices": ["u", "v"], "edges": [{"id": "c", "src": "u", "rng": "v"}, {"id": "b", "src": "v", "rng": "v"}]});
    assert_eq!(
        run(&["validate", "-g", &sourced.to_string()]).status.code(),
        Some(1)
    );
}
