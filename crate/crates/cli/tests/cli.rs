use std::path::PathBuf;
use std::process::{Command, Output};

use bpilab::corpus::{build_cyclic, build_symmetric, load_report, save_corpus, save_group_spec};

fn bpilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpilab")).args(args).env_remove("BPILAB_CORPUS_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bpilab-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn bpi_of_s3() {
    let o = bpilab(&["bpi", "--group", "builtin:S3", "--pi", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degrees {1, 2}"), "{}", stdout(&o));
}

#[test]
fn affine_example() {
    let o = bpilab(&["example", "--name", "paper-3.2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("cd(G) = {1, 2, 3, 8}"));
    assert!(text.contains("Bcd_3(G) = {1, 8}"));
    assert!(text.contains("Bcd_2(G) = {1, 2, 3}"));
}

#[test]
fn arithmetic_examples_hold() {
    for name in ["paper-3.1-arith", "paper-ex1-arith"] {
        let o = bpilab(&["example", "--name", name, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(doc["holds"], true, "{name}");
    }
}

#[test]
fn verify_ito_michler_on_s4() {
    let o = bpilab(&["verify", "--check", "ito-michler", "--group", "builtin:S4", "--pi", "2", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().contains('✓'));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["bpi", "--group", "builtin:S3", "--pi", "3,3"],
        vec!["bpi", "--group", "builtin:S3", "--pi", "4"],
        vec!["table", "--group", "builtin:NoSuchGroup"],
        vec!["table", "--group", "/nonexistent/group.json"],
        vec!["verify", "--check", "no-such-check", "--group", "builtin:S3", "--pi", "2"],
        vec!["example", "--name", "nope"],
        vec!["bpi", "--group", "builtin:S5", "--pi", "2"],
    ] {
        let o = bpilab(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn json_report_round_trips_and_is_deterministic() {
    let args = ["corpus-run", "--checks", "thompson-equiv,bpi-union-size", "--format", "json"];
    let a = bpilab(&args);
    let b = bpilab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report = load_report(&stdout(&a)).unwrap();
    assert!(!report.has_failures());
    assert!(report.run.pass > 0);
}

#[test]
fn rejected_entries_exit_2() {
    let dir = scratch("rejected");
    let path = dir.join("corpus.json");
    std::fs::write(&path, save_corpus(&[build_symmetric(5)]).unwrap()).unwrap();
    let out = dir.join("report.json");
    let o = bpilab(&[
        "corpus-run",
        "--corpus",
        path.to_str().unwrap(),
        "--checks",
        "thompson-equiv",
        "--format",
        "json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let report = load_report(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!report.run.rejected.is_empty());
}

#[test]
fn corpus_dir_resolves_relative_files() {
    let dir = scratch("dir");
    std::fs::write(dir.join("c6.json"), save_group_spec(&build_cyclic(6)).unwrap()).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bpilab"))
        .args(["table", "--group", "c6.json"])
        .env("BPILAB_CORPUS_DIR", &dir)
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("C6: order 6, 6 classes"));
}

#[test]
fn table_json_loads_back() {
    let o = bpilab(&["table", "--group", "builtin:A4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let t = bpilab::corpus::load_table(&stdout(&o)).unwrap();
    assert_eq!(t.degrees(), vec![1, 1, 1, 3]);
}
