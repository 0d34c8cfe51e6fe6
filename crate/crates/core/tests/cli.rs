use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn scgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scgame"))
        .args(args)
        .env_remove("SCWIDTH_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn treewidth_of_k4() {
    for (param, want) in [
        ("tw", "3"),
        ("mtw", "3"),
        ("vf-tw", "3"),
        ("rank-width", "1"),
        ("carving-width", "4"),
    ] {
        let o = scgame(&["width", "--param", param, &path("k4.edges")]);
        assert_eq!(o.status.code(), Some(0), "{param}");
        assert_eq!(stdout(&o).trim(), want, "{param}");
    }
}

#[test]
fn branchwidth_of_c5_and_matroid_treewidth_of_a_matrix() {
    let o = scgame(&["width", "--param", "bw", "--fn", "delta", &path("c5.edges")]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = scgame(&["width", "--param", "mtw", "--matrix", &path("k4.mat")]);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn exit_codes() {
    assert_eq!(scgame(&["solve", &path("k3-tw3.json")]).status.code(), Some(0));
    assert_eq!(scgame(&["solve", &path("k3-tw2.json")]).status.code(), Some(1));
    assert_eq!(scgame(&["check-scenario", &path("k3-tw1.json")]).status.code(), Some(1));
    assert_eq!(scgame(&["solve", &path("missing.json")]).status.code(), Some(2));
    assert_eq!(
        scgame(&["width", "--param", "tw", &path("path3.json")]).status.code(),
        Some(2)
    );
    assert_eq!(
        scgame(&["--limit", "2", "solve", &path("k3-tw3.json")]).status.code(),
        Some(3)
    );
}

#[test]
fn limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_scgame"))
        .args(["solve", &path("k3-tw3.json")])
        .env("SCWIDTH_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn monotone_and_general_agree_on_bundled_scenarios() {
    for f in [
        "k3-tw1.json",
        "k3-tw2.json",
        "k3-tw3.json",
        "k3-delta.json",
        "path3.json",
    ] {
        let general = json(&scgame(&["--json", "solve", &path(f)]));
        let mono = json(&scgame(&["--json", "solve", "--monotone", &path(f)]));
        assert_eq!(general["winner"], mono["winner"], "{f}");
    }
}

#[test]
fn conversions_round_trip_and_revalidate() {
    let dir = std::env::temp_dir().join(format!("scgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scenario = path("k3-tw3.json");
    let tdec = dir.join("t.json");
    let o = scgame(&["--json", "tdec", &scenario]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&tdec, &o.stdout).unwrap();
    for to in ["bdec", "searchtree", "tdec"] {
        let o = scgame(&[
            "--json",
            "convert",
            "--from",
            "tdec",
            "--to",
            to,
            "--scenario",
            &scenario,
            tdec.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "tdec -> {to}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let out = dir.join(format!("{to}.json"));
        std::fs::write(&out, &o.stdout).unwrap();
        let back = scgame(&[
            "--json",
            "convert",
            "--from",
            to,
            "--to",
            "tdec",
            "--scenario",
            &scenario,
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            back.status.code(),
            Some(0),
            "{to} -> tdec: {}",
            String::from_utf8_lossy(&back.stderr)
        );
        assert_eq!(json(&back)["kind"], "tdec");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bramble_exists_exactly_when_the_robber_wins() {
    for (f, robber) in [("k3-tw2.json", true), ("k3-tw3.json", false), ("path3.json", false)] {
        let o = scgame(&["--json", "bramble", &path(f)]);
        assert_eq!(json(&o)["bramble"].is_null(), !robber, "{f}");
    }
}

#[test]
fn dot_output() {
    let dot = std::env::temp_dir().join(format!("scgame-dot-{}.dot", std::process::id()));
    let o = scgame(&["--dot", dot.to_str().unwrap(), "tdec", &path("path3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(
        text.trim_start().starts_with("graph") || text.trim_start().starts_with("digraph"),
        "{text}"
    );
    std::fs::remove_file(dot).ok();
}

#[test]
fn play_reads_moves_from_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_scgame"))
        .args(["play", "--monotone", &path("k3-tw3.json")])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"{a-b}{b-c}{a-c}\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("captured"));
}
