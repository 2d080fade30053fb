use std::path::Path;
use std::process::Command;

use zdvce::graph::Family;
use zdvce_cli::format;

fn zdvce(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zdvce"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn json_round_trip_over_every_family() {
    for n in 2..=500u64 {
        for family in Family::ALL {
            let g = family.build(n).unwrap();
            let text = format::graph_to_json(&g, Some(family));
            let (back, fam) = format::graph_from_json(&text).unwrap();
            assert_eq!(fam, Some(family));
            assert_eq!(back.labels(), g.labels(), "{family}({n})");
            assert_eq!(back.edges(), g.edges(), "{family}({n})");
            assert_eq!(back.modulus(), Some(n));
        }
    }
}

#[test]
fn build_prints_dot_and_json() {
    let (code, dot, _) = zdvce(&["build", "16"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph \"gamma(16)\" {"));
    assert!(dot.contains("  8 -- 10;"));

    let (code, json, _) = zdvce(&["build", "15", "--family", "line-of-gamma", "--format", "json"]);
    assert_eq!(code, 0);
    let (g, _) = format::graph_from_json(&json).unwrap();
    assert_eq!((g.len(), g.edge_count()), (8, 16));

    let (code, _, err) = zdvce(&["build", "12", "--family", "nope"]);
    assert_ne!(code, 0);
    assert!(err.contains("nope"));
}

#[test]
fn construct_exit_codes() {
    let (code, out, _) = zdvce(&["construct", "30"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("gamma-squarefree"));

    let (code, out, _) = zdvce(&["construct", "12", "--family", "omega"]);
    assert_eq!(code, 1);
    assert!(out.contains("NotVce: isolated vertex 2"));

    let (code, out, _) = zdvce(&["construct", "49"]);
    assert_eq!(code, 0);
    assert!(out.contains("brute-force"));

    let (code, _, _) = zdvce(&["construct", "7"]);
    assert_eq!(code, 2);

    let (code, out, _) = zdvce(&["construct", "36", "--family", "nilradical"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn check_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let (_, json, _) = zdvce(&["build", "15", "--format", "json"]);
    let graph = write(dir.path(), "g.json", &json);

    let good = write(dir.path(), "good.json", r#"{"R": [3, 6, 9, 12], "B": [5, 10]}"#);
    let (code, out, _) = zdvce(&["check", &graph, &good]);
    assert_eq!(code, 0, "{out}");

    let bad = write(dir.path(), "bad.json", r#"{"R": [3, 5, 6, 9, 12], "B": [10]}"#);
    let (code, out, _) = zdvce(&["check", &graph, &bad]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("witnesses:") && l.contains(" 5")));

    let dup = write(dir.path(), "dup.json", r#"{"R": [3, 3, 6, 9, 12], "B": [5, 10]}"#);
    let (code, out, _) = zdvce(&["check", &graph, &dup]);
    assert_eq!(code, 3);
    assert!(out.contains("more than once"));
}

#[test]
fn search_subcommand() {
    let (code, out, _) = zdvce(&["search", "10", "--family", "total-of-gamma"]);
    assert_eq!(code, 1, "{out}");
    let (code, _, _) = zdvce(&["search", "15", "--method", "local", "--seed", "3"]);
    assert_eq!(code, 0);
    let (code, _, _) = zdvce(&["search", "64", "--cap", "10"]);
    assert_eq!(code, 2);
}

#[test]
fn survey_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let (code, _, err) = zdvce(&["survey", "2", "60", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
    }
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());

    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("n,family,shape,vertices,verdict,source\n"));
    assert_eq!(text.lines().count(), 1 + 59 * Family::ALL.len());
    assert!(text.contains("\n30,gamma,squarefree(m=3),21,VCE-by-construction,gamma-squarefree\n"));
}

#[test]
fn survey_to_stdout_with_family_filter() {
    let (code, out, _) = zdvce(&["survey", "12", "12", "--family", "omega,gamma"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("12,gamma,"));
    assert!(lines[2].starts_with("12,omega,p^2q(p=2;q=3),6,Not-VCE,isolated-vertex"));

    let (code, _, _) = zdvce(&["survey", "9", "3"]);
    assert_eq!(code, 2);
    let (code, _, err) = zdvce(&["survey", "1", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("at 2 or above"));
}
