//! End-to-end tests against the compiled binary.

use std::process::{Command, Output};

fn klw() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_klw"));
    cmd.env_remove("KLW_TABLE_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    klw().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn klpoly_renders_the_rank_three_example() {
    let out = run(&["klpoly", "-t", "A", "-r", "3", "-x", "2", "-w", "2132"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "1+q\nq=1: 2\n");
}

#[test]
fn klpoly_accepts_the_empty_word_as_identity() {
    let out = run(&["klpoly", "-t", "A", "-r", "2", "-x", "", "-w", "121"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1\nq=1: 1\n");
}

#[test]
fn klpoly_incomparable_pair_gives_zero() {
    let out = run(&["klpoly", "-t", "A", "-r", "2", "-x", "121", "-w", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "0\nq=1: 0\n");
}

#[test]
fn klpoly_json_report_carries_the_envelope() {
    let out = run(&[
        "klpoly", "-t", "A", "-r", "3", "-x", "2", "-w", "2132", "--format", "json",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["cartan"], "A3");
    assert_eq!(report["normalization"], "v-soergel");
    assert_eq!(report["payload"]["polynomial"], "1+q");
    assert_eq!(report["payload"]["at_one"], "2");
    assert!(report["version"].is_string());
}

#[test]
fn bad_word_is_a_usage_error() {
    let out = run(&["klpoly", "-t", "A", "-r", "2", "-x", "9", "-w", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("usage"));
}

#[test]
fn capacity_overflow_exits_three() {
    let out = run(&["klpoly", "-t", "A", "-r", "12", "-x", "1", "-w", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("capacity"));
}

#[test]
fn cells_table_lists_three_cells_with_shapes() {
    let out = run(&["cells", "-t", "A", "-r", "2", "--side", "two-sided"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("cells: 3"));
    assert!(text.contains("(2,1)"));
    assert!(text.contains("(1,1,1)"));
}

#[test]
fn cells_dot_has_one_node_per_cell() {
    let out = run(&["cells", "-t", "B", "-r", "2", "--side", "left", "--format", "dot"]);
    assert!(out.status.success());
    let dot = stdout_of(&out);
    assert!(dot.starts_with("digraph cells {"));
    assert_eq!(dot.matches(" [label=").count(), 4);
}

#[test]
fn cells_json_is_deterministic_and_reports_agreement() {
    let args = ["cells", "-t", "A", "-r", "3", "--side", "left", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(report["payload"]["cell_count"], 10);
    assert_eq!(report["payload"]["rs_agreement"], true);
}

#[test]
fn verify_fact2_fails_as_expected_on_b2() {
    let out = run(&["verify", "fact2", "-t", "B", "-r", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    assert!(stdout_of(&out).contains("fails as expected"));
}

#[test]
fn verify_fact2_holds_on_a3() {
    let out = run(&["verify", "fact2", "-t", "A", "-r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("PASS"));
}

#[test]
fn verify_all_passes_on_a2() {
    let out = run(&["verify", "all", "-t", "A", "-r", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("fact1 A2: PASS"));
    assert!(text.trim_end().ends_with("verify: PASS"));
}

#[test]
fn verify_thmout_reports_wall_order_two() {
    let out = run(&[
        "verify", "thmout", "-t", "A", "-r", "2", "-J", "1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let wall = &report["payload"]["results"][0]["walls"][0];
    assert_eq!(wall["wall_order"], 2);
    assert_eq!(wall["all_equal_wall_order"], true);
    for entry in wall["multiplicities"].as_array().unwrap() {
        assert_eq!(entry["multiplicity"], 2);
    }
}

#[test]
fn table_build_export_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let built = dir.path().join("a.json");
    let exported = dir.path().join("b.json");
    let out = run(&["table", "build", "-t", "A", "-r", "3", "--path", built.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let out = run(&["table", "export", "-t", "A", "-r", "3", "--path", exported.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(&built).unwrap(),
        std::fs::read(&exported).unwrap()
    );
    let out = run(&["table", "import", "--path", built.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("24 elements"));
}

#[test]
fn truncated_import_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.json");
    let out = run(&["table", "build", "-t", "A", "-r", "2", "--path", full.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = std::fs::read(&full).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &bytes[..bytes.len() / 2]).unwrap();
    let out = run(&["table", "import", "--path", truncated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_of(&out).contains("format"));
}

#[test]
fn corrupt_cache_warns_and_rebuilds() {
    let dir = tempfile::tempdir().unwrap();
    let cached = dir.path().join("A2.klt.json");
    std::fs::write(&cached, b"garbage").unwrap();
    let out = klw()
        .args(["klpoly", "-t", "A", "-r", "2", "-x", "1", "-w", "121"])
        .env("KLW_TABLE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1\nq=1: 1\n");
    assert!(stderr_of(&out).contains("unusable cached table"));
    // The cache is replaced by a valid export and used on the next run.
    assert!(std::fs::read(&cached).unwrap().starts_with(b"{"));
    let again = klw()
        .args(["klpoly", "-t", "A", "-r", "2", "-x", "1", "-w", "121"])
        .env("KLW_TABLE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(again.status.success());
    assert!(stderr_of(&again).contains("using cached table"));
}

#[test]
fn block_json_carries_wall_matrices_and_thmout_table() {
    let out = run(&["block", "-t", "A", "-r", "2", "-J", "1", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let wall = &report["payload"]["wall"];
    assert_eq!(wall["wall_order"], 2);
    assert_eq!(wall["singular_index"].as_array().unwrap().len(), 3);
    assert_eq!(wall["wall_on"].as_array().unwrap().len(), 6);
    assert_eq!(wall["wall_out"].as_array().unwrap().len(), 3);
    for entry in wall["thmout"].as_array().unwrap() {
        assert_eq!(entry["multiplicity"], 2);
    }
    assert_eq!(
        report["payload"]["multiplicities"][0],
        serde_json::json!([1, 1, 1, 1, 1, 1])
    );
}

#[test]
fn jobs_flag_limits_the_pool_without_changing_results() {
    let out = run(&[
        "klpoly", "-t", "B", "-r", "2", "-x", "1", "-w", "1212", "--jobs", "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1\nq=1: 1\n");
}
