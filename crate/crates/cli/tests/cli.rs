use std::process::{Command, Output};

use serde_json::Value;

fn prelie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prelie"))
        .args(args)
        .env_remove("PRELIE_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn lines(args: &[&str]) -> Vec<String> {
    let out = prelie(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out).lines().map(str::to_string).collect()
}

#[test]
fn enum_lists_sorted_trees() {
    assert_eq!(lines(&["trees", "enum", "--n", "2"]), ["1(2)", "2(1)"]);
    assert_eq!(lines(&["trees", "enum", "--n", "1"]), ["1"]);
    assert_eq!(lines(&["trees", "enum", "--n", "2", "--special"]).len(), 9);
    assert_eq!(lines(&["trees", "enum", "--n", "4", "--alphabet", "1"]).len(), 4);
    assert_eq!(lines(&["trees", "enum", "--n", "4"]).len(), 64);
}

#[test]
fn delta_output_formats() {
    assert_eq!(lines(&["delta", "1"]), ["0"]);
    assert_eq!(lines(&["delta", "1(2)"]), ["+1 @(1,2)"]);
    let cherry = lines(&["delta", "1(2,3)"]);
    assert_eq!(cherry.len(), 4);
    assert_eq!(cherry.iter().filter(|l| l.starts_with('-')).count(), 1);

    let json: Value = serde_json::from_str(&stdout(&prelie(&["--format", "json", "delta", "1(2)"]))).unwrap();
    assert_eq!(json, serde_json::json!([{ "coefficient": "1/1", "tree": "@(1,2)" }]));
    let empty: Value = serde_json::from_str(&stdout(&prelie(&["delta", "1", "--format", "json"]))).unwrap();
    assert_eq!(empty, serde_json::json!([]));

    assert_eq!(
        lines(&["--format", "csv", "delta", "1(2)"]),
        ["coefficient,tree", "1/1,\"@(1,2)\""]
    );
}

#[test]
fn kernel_reports_dimension() {
    assert_eq!(lines(&["kernel", "--n", "3"]).last().unwrap(), "dim = 2");
    assert_eq!(lines(&["kernel", "--n", "4"]).last().unwrap(), "dim = 6");
    assert_eq!(lines(&["kernel", "--alphabet", "1", "--n", "3"]), ["dim = 0"]);
    let json: Value = serde_json::from_str(&stdout(&prelie(&["kernel", "--n", "2", "--format", "json"]))).unwrap();
    assert_eq!(json["dim"], 1);
    assert_eq!(json["basis"][0].as_array().unwrap().len(), 2);
}

#[test]
fn dims_table_rows() {
    let rows = lines(&["--format", "csv", "dims", "--max-n", "3"]);
    assert_eq!(rows[0], "n,trees,special_trees,rank,kernel_dim,expected,match");
    assert_eq!(&rows[1..], ["1,1,2,0,1,1,ok", "2,2,9,1,1,1,ok", "3,9,64,7,2,2,ok"]);
}

#[test]
fn verify_exit_codes() {
    let ok = prelie(&["verify", "square", "--max-n", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("basis trees: pass (76 cases, 0 failed)"), "{text}");
    assert!(text.ends_with("overall: pass\n"));
    assert_eq!(prelie(&["verify", "all", "--max-n", "0"]).status.code(), Some(2));
    assert_eq!(prelie(&["verify", "all", "--max-n", "7"]).status.code(), Some(2));
    assert_eq!(prelie(&["verify", "bogus", "--max-n", "2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["delta", "1(2"][..],
        &["delta", "@(1,2)"],
        &["delta", "0"],
        &["kernel", "--n", "9"],
        &["trees", "enum", "--n", "0"],
        &["--threads", "0", "delta", "1"],
        &["--format", "xml", "delta", "1"],
        &["frobnicate"],
    ] {
        let out = prelie(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn thread_count_never_changes_output() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_prelie"))
            .args(["--format", "json", "kernel", "--n", "4"])
            .env("PRELIE_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run("1"), run("3"));
    let a = prelie(&["--threads", "1", "trees", "enum", "--n", "5", "--special"]).stdout;
    let b = prelie(&["--threads", "4", "trees", "enum", "--n", "5", "--special"]).stdout;
    assert_eq!(a, b);
}
