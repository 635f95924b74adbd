use std::io::Write;
use std::process::{Command, Output, Stdio};

fn strip_ph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strip-ph")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field_additions(out: &Output) -> u64 {
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix("field_additions "))
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn generate_strip_two() {
    let out = strip_ph(&["generate", "strip", "--n", "2", "--format", "text"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 19);
    assert!(text.lines().any(|l| l.starts_with('#')));
}

#[test]
fn generate_modified_one_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("y1.json");
    let out = strip_ph(&["generate", "modified", "--n", "1", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 19);

    let reduced = strip_ph(&["reduce", "--input", path.to_str().unwrap()]);
    assert!(reduced.status.success());
}

#[test]
fn generate_rejects_zero_and_bad_paths() {
    assert_eq!(strip_ph(&["generate", "strip", "--n", "0"]).status.code(), Some(1));
    let out = strip_ph(&["generate", "strip", "--n", "1", "--output", "/nonexistent/dir/x.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reduce_examples() {
    let full = strip_ph(&["reduce", "--variant", "strip", "--n", "2", "--algorithm", "standard", "--scope", "full"]);
    assert_eq!(field_additions(&full), 71);
    let twist = strip_ph(&["reduce", "--variant", "strip", "--n", "4", "--algorithm", "twist", "--scope", "full"]);
    assert_eq!(field_additions(&twist), 155);
    let d2 = strip_ph(&["reduce", "--variant", "strip", "--n", "2", "--algorithm", "standard", "--scope", "d2"]);
    assert_eq!(field_additions(&d2), 27);
}

#[test]
fn reduce_trace_and_json() {
    let out = strip_ph(&["reduce", "--variant", "strip", "--n", "1", "--trace"]);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains(" → ")).count(), 5);
    let json = strip_ph(&["reduce", "--variant", "strip", "--n", "1", "--algorithm", "twist", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["field_additions"], 10);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(strip_ph(&["reduce", "--variant", "strip", "--n", "2", "--algorithm", "bogus"]).status.code(), Some(1));
    assert_eq!(strip_ph(&["reduce", "--variant", "strip", "--n", "2", "--scope", "d7"]).status.code(), Some(1));
    assert_eq!(strip_ph(&["reduce"]).status.code(), Some(1));
    assert_eq!(strip_ph(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(strip_ph(&["--help"]).status.code(), Some(0));
}

#[test]
fn diagram_of_triangle_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    std::fs::write(&path, "1 1\n2 2\n3 3\n4 1 2\n5 1 3\n6 2 3\n7 1 2 3\n").unwrap();
    let out = strip_ph(&["diagram", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "dgm0: (1,inf) (2,4) (3,5)\ndgm1: (6,7)\n");

    std::fs::write(&path, "1 1 2\n").unwrap();
    assert_eq!(strip_ph(&["diagram", "--input", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn diagram_of_strips() {
    let out = strip_ph(&["diagram", "--variant", "strip", "--n", "5"]);
    assert_eq!(stdout(&out).matches("inf").count(), 1);
    let out = strip_ph(&["diagram", "--variant", "modified", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let diagonal = v["1"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p[0] == p[1])
        .count();
    assert_eq!(diagonal, 4);
}

#[test]
fn bench_table_and_fit() {
    let out = strip_ph(&["bench", "strip", "--min-n", "1", "--max-n", "5", "--algorithms", "standard,twist,lookahead"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,N,algorithm,scope,column_additions,field_additions,elapsed_ns"));
    let counts: Vec<u64> = lines.map(|l| l.split(',').nth(5).unwrap().parse().unwrap()).collect();
    assert_eq!(counts, vec![22, 10, 22, 71, 35, 71, 145, 85, 145, 247, 155, 247, 380, 248, 380]);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = strip_ph(&["bench", "strip", "--min-n", "8", "--max-n", "32", "--step", "8", "--algorithms", "standard", "--output", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let fit = strip_ph(&["fit", csv.to_str().unwrap(), "--format", "json"]);
    assert!(fit.status.success());
    let v: serde_json::Value = serde_json::from_slice(&fit.stdout).unwrap();
    assert_eq!(v[0]["rows"], 4);
    assert!(v[0]["slope"].as_f64().unwrap() > 2.0);
}

#[test]
fn fit_reads_stdin_and_rejects_short_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_strip-ph"))
        .args(["fit", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"n,N,algorithm,scope,column_additions,field_additions,elapsed_ns\n1,11,standard,full,5,22,0\n")
        .unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(1));
}

#[test]
fn realize_and_verify() {
    let out = strip_ph(&["realize", "modified", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<usize> = lines.next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    assert_eq!(header[0], 10);
    assert!(header[1] <= 17);
    lines.next();
    let dims: Vec<usize> = lines.map(|l| l.split(' ').count()).collect();
    assert_eq!(dims, vec![10; 10]);

    assert_eq!(strip_ph(&["verify", "modified", "--n", "4"]).status.code(), Some(0));
    let refused = strip_ph(&["verify", "strip", "--n", "1"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("not a flag complex"));
    let guard = strip_ph(&["verify", "modified", "--n", "8", "--schedule", "geometric"]);
    assert_eq!(guard.status.code(), Some(3));
}
