use std::path::Path;
use std::process::{Command, Output};

fn efc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efc"))
        .args(args)
        .env_remove("EFC_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn generate_emits_graph_and_dot() {
    let o = efc(&["generate", "butterfly", "--r", "3"]);
    assert_eq!(code(&o), 0);
    let g = efc::io::parse_graph(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (32, 48));
    assert_eq!(g.label(9), "[1,1]");

    let o = efc(&["generate", "butterfly", "--r", "2", "--dot"]);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("graph G {") && dot.contains("rank=same"));
}

#[test]
fn closure_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.json", r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
    assert_eq!(code(&efc(&["closure", "--graph", &p3, "--black", "0"])), 0);
    assert_eq!(code(&efc(&["closure", "--graph", &p3, "--black", "1"])), 1);
    assert_eq!(code(&efc(&["closure", "--graph", &p3, "--black", "7"])), 2);
    assert_eq!(
        code(&efc(&[
            "closure",
            "--graph",
            "butterfly:2",
            "--black",
            "[0,0] [1,0] [2,0] [3,0]"
        ])),
        1
    );
}

#[test]
fn check_sets() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#);
    let good = write(dir.path(), "good.json", "[[0,1]]");
    let bad = write(dir.path(), "bad.json", "[[0,1],[1,2]]");
    let zfs = write(dir.path(), "zfs.json", r#"{"vertices":[0]}"#);
    assert_eq!(code(&efc(&["check", "efs", "--graph", &c4, "--set", &good])), 0);
    assert_eq!(code(&efc(&["check", "efs", "--graph", &c4, "--set", &bad])), 1);
    assert_eq!(code(&efc(&["check", "zfs", "--graph", &c4, "--set", &zfs])), 1);
}

#[test]
fn solve_and_guards() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#);
    let o = efc(&["solve", "ef", "--graph", &c4, "--parallel", "2"]);
    assert_eq!(code(&o), 0);
    let cert = efc::certificate::parse_certificate(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(cert.value, Some(1));

    let o = efc(&["solve", "zf", "--graph", &c4]);
    assert_eq!(code(&o), 0);

    assert_eq!(code(&efc(&["solve", "ef", "--graph", "butterfly:2"])), 1);
    assert_eq!(
        code(&efc(&["solve", "ef", "--graph", "butterfly:4", "--max-n", "32"])),
        2
    );
    assert_eq!(code(&efc(&["solve", "ef", "--graph", &c4, "--parallel", "oops"])), 2);
}

#[test]
fn construct_bounds_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bf4.json").display().to_string();
    assert_eq!(code(&efc(&["construct", "--r", "4", "--seed", "7", "--out", &out])), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"seed\": 7"));
    assert_eq!(code(&efc(&["verify", "--cert", &out])), 0);

    let tampered = text.replacen("\"holds\": true", "\"holds\": false", 1);
    let t = write(dir.path(), "t.json", &tampered);
    assert_eq!(code(&efc(&["verify", "--cert", &t])), 1);

    assert_eq!(code(&efc(&["construct", "--r", "2"])), 1);
    assert_eq!(code(&efc(&["construct", "--r", "1"])), 2);
    assert_eq!(code(&efc(&["bounds", "--r", "8"])), 0);
}

#[test]
fn same_seed_same_bytes() {
    let a = efc(&["construct", "--r", "5", "--seed", "11"]);
    let b = efc(&["construct", "--r", "5", "--seed", "11"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reduce() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.json", r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
    let o = efc(&["reduce", "--graph", &p3]);
    assert_eq!(code(&o), 0);
    let lifted = efc::io::parse_graph(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!((lifted.vertex_count(), lifted.edge_count()), (6, 9));
    assert_eq!(lifted.label(3), "0'");

    let out = dir.path().join("red.json").display().to_string();
    assert_eq!(code(&efc(&["reduce", "--graph", &p3, "--verify", "--out", &out])), 0);
    assert_eq!(code(&efc(&["verify", "--cert", &out])), 0);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n":2,"edges":[[0,0]]}"#);
    let o = efc(&["closure", "--graph", &bad, "--black", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("self-loop"));
    assert_eq!(code(&efc(&["closure", "--graph", "missing.json", "--black", "0"])), 2);
}
