//! Golden outputs, exit codes and determinism of the `unipotent` binary.

use std::process::Command;

use unipotent_invariants::automorphism::UnipotentAffineMap;
use unipotent_invariants::invariants::{u_generator, v_generator};
use unipotent_invariants::linalg::spans_equal;
use unipotent_invariants::poly::parse;

fn unipotent(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_unipotent"))
        .args(args)
        .env_remove("UNIPOTENT_THREADS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn stdout(args: &[&str]) -> String {
    let (code, out, err) = unipotent(args);
    assert_eq!(code, 0, "stderr: {err}");
    out
}

#[test]
fn gen_u2() {
    assert_eq!(
        stdout(&["gen", "--case", "affine", "--n", "4", "--name", "u2"]),
        "-x1*x2 - 2*x1*x3 + x2^2 - x2 - 3*x3 - 2*x4\n"
    );
    let map = UnipotentAffineMap::make_affine_jordan(4).unwrap();
    assert!(map.is_invariant(&parse("-x1*x2 - 2*x1*x3 + x2^2 - x2 - 3*x3 - 2*x4", 4).unwrap()));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["gen", "--case", "affine", "--n", "3", "--name", "v1", "--json"])).unwrap();
    assert_eq!(v["name"], "v1");
    assert_eq!(v["degree"], 3);
    assert_eq!(parse(v["poly"].as_str().unwrap(), 3).unwrap(), v_generator(3, 1).unwrap());
}

#[test]
fn gen_lists_round_trip() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["gen", "--case", "affine", "--n", "7", "--json"])).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 6);
    for item in items {
        let name = item["name"].as_str().unwrap();
        let p = parse(item["poly"].as_str().unwrap(), 7).unwrap();
        let k: usize = name[1..].parse().unwrap();
        let expected = if name.starts_with('u') { u_generator(7, k) } else { v_generator(7, k) };
        assert_eq!(p, expected.unwrap(), "{name}");
    }
    assert_eq!(
        stdout(&["gen", "--case", "graded", "--n", "2"]),
        "x1 = x1\np1 = -x1*x2 - 2*x1*x3 + x2^2\n"
    );
}

#[test]
fn solve_affine_quadratics() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["solve", "--case", "affine", "--n", "4", "--degree", "2", "--json"])).unwrap();
    let polys: Vec<_> = v.as_array().unwrap().iter().map(|p| parse(p.as_str().unwrap(), 4).unwrap()).collect();
    assert_eq!(polys.len(), 3);
    let expected = vec![parse("1", 4).unwrap(), u_generator(4, 1).unwrap(), u_generator(4, 2).unwrap()];
    assert!(spans_equal(&polys, &expected));
    let text = stdout(&["solve", "--case", "graded-map", "--n", "2", "--degree", "2"]);
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn relations_golden() {
    let out = stdout(&["relations", "--n", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("OK: x1^2*s = q1^2 + 3*x1*p1*q1 - p1^3 + 2*x1^2*p1^2"));
    // hash of the text "0"
    assert_eq!(
        lines.next(),
        Some("  sha256(lhs - rhs) = 5feceb66ffc86f38d952786c6d696c79c2dbc239dd4e91b46729d73a27fb57e9")
    );
    assert!(stdout(&["relations"]).contains("OK: x1^3*t = q1^2 - p1^3 + 3*x1*p1*q1 + 2*x1^2*p1^2 + 3*x1^2*p1*p2"));
}

#[test]
fn rewrite_outputs() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "rewrite", "--case", "affine", "--n", "2", "--expr", "x2", "--json",
    ]))
    .unwrap();
    assert_eq!(v["expression"], "-1/2*X1^2 - 1/2*X1 + 1/2*T2");
    assert_eq!(v["residual_x1_degree"], 2);
    let s = stdout(&["gen", "--case", "graded", "--n", "3", "--name", "s"]);
    let dir = std::env::temp_dir().join(format!("unipotent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.txt");
    std::fs::write(&path, &s).unwrap();
    let out = stdout(&["rewrite", "--case", "graded", "--n", "3", "--file", path.to_str().unwrap()]);
    assert_eq!(out, "2*P1^2 + 3*X1^-1*P1*Q1 - X1^-2*P1^3 + X1^-2*Q1^2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dims_and_phi() {
    assert_eq!(stdout(&["dims", "--case", "graded", "--n", "3", "--max-degree", "4"]), "[1, 1, 2, 3, 5]\n");
    assert_eq!(stdout(&["dims", "--case", "affine", "--n", "4", "--max-degree", "2", "--json"]), "[\n  1,\n  1,\n  3\n]\n");
    assert_eq!(stdout(&["phi", "--index", "3"]), "1/6*x1^3 - 1/2*x1^2 + 1/3*x1\n");
}

#[test]
fn verify_report() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["verify", "--n-max", "3", "--json"])).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["skip"], 2);
}

#[test]
fn exit_codes() {
    let (code, out, err) = unipotent(&["rewrite", "--case", "affine", "--n", "3", "--expr", "x1^"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.starts_with("error: parse error at byte"), "{err}");
    let (code, _, err) = unipotent(&["gen", "--case", "affine", "--n", "1"]);
    assert_eq!(code, 1);
    assert_eq!(err.lines().count(), 1);
    let (code, _, _) = unipotent(&["solve", "--case", "affine", "--n", "3", "--degree", "2", "--mode", "graded"]);
    assert_eq!(code, 1);
    let (code, _, _) = unipotent(&["rewrite", "--case", "graded", "--n", "2", "--expr", "x2"]);
    assert_eq!(code, 1);
    let (code, _, _) = unipotent(&["solve", "--n", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["solve", "--case", "affine", "--n", "6", "--degree", "3", "--json"];
    let base = stdout(&args);
    for threads in ["1", "2", "4"] {
        let mut with = args.to_vec();
        with.extend(["--threads", threads]);
        assert_eq!(stdout(&with), base);
    }
    let out = Command::new(env!("CARGO_BIN_EXE_unipotent"))
        .args(args)
        .env("UNIPOTENT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), base);
}
