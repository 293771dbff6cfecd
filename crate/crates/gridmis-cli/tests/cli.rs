//! End-to-end tests against the built binary: output shapes, exit codes,
//! and the documented flag surface.

use std::io::Write;
use std::process::{Command, Output};

fn gridmis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridmis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn first_line(output: &Output) -> String {
    stdout_of(output).lines().next().unwrap_or_default().to_string()
}

#[test]
fn count_published_values() {
    let out = gridmis(&["count", "-m", "3", "-n", "3"]);
    assert!(out.status.success());
    assert_eq!(first_line(&out), "10");

    let out = gridmis(&["count", "-m", "8", "-n", "8"]);
    assert!(out.status.success());
    assert_eq!(first_line(&out), "2745186");
    assert!(stdout_of(&out).contains("digits: 7"));
}

#[test]
fn count_json_fields() {
    let out = gridmis(&["count", "-m", "3", "-n", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["sigma"], "10");
    assert_eq!(value["digits"], 2);
    assert_eq!(value["sci"], "1.0000e1");
}

#[test]
fn poly_unit_grid() {
    let out = gridmis(&["poly", "-m", "1", "-n", "1"]);
    assert!(out.status.success());
    assert_eq!(first_line(&out), r#"[[1,"1"]]"#);
}

#[test]
fn table_rows() {
    let out = gridmis(&["table", "--max", "4"]);
    let text = stdout_of(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows, vec!["1", "2,2", "2,4,10", "3,6,18,42"]);

    let out = gridmis(&["table", "--max", "1"]);
    assert_eq!(stdout_of(&out).trim(), "1");
}

#[test]
fn table_full_rectangle_is_symmetric() {
    let out = gridmis(&["table", "--max", "5", "--full"]);
    let rows: Vec<Vec<String>> = stdout_of(&out)
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for (r, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), 5);
        for (c, cell) in row.iter().enumerate() {
            assert_eq!(cell, &rows[c][r]);
        }
    }
}

#[test]
fn verify_passes_and_fault_injection_fails() {
    let out = gridmis(&["verify", "--max-cells", "12"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("all suites passed"));

    let out = gridmis(&["verify", "--max-cells", "12", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("counterexample at ("));
}

#[test]
fn entropy_unit_grid() {
    let out = gridmis(&["entropy", "-m", "1", "-n", "1"]);
    let text = stdout_of(&out);
    assert!(text.contains("sigma: 1\n"));
    assert!(text.contains("root_mn: 1.0000"));
    assert!(text.contains("root_sup: 1.0000"));
}

#[test]
fn kappa_row_count_follows_schedule() {
    // Width 1 keeps the 19-row reference schedule cheap.
    let out = gridmis(&["kappa", "--m", "1", "--n-max", "380", "--step", "20"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).lines().count(), 19);

    let out = gridmis(&["kappa", "--m", "2", "--n-max", "8", "--step", "2"]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.split(',').count() == 7));
}

#[test]
fn kappa_runs_are_reproducible() {
    let a = gridmis(&["kappa", "--m", "3", "--n-max", "30", "--step", "10"]);
    let b = gridmis(&["kappa", "--m", "3", "--n-max", "30", "--step", "10"]);
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn results_independent_of_thread_count() {
    let one = gridmis(&["count", "-m", "8", "-n", "9", "--threads", "1"]);
    let two = gridmis(&["count", "-m", "8", "-n", "9", "--threads", "2"]);
    assert_eq!(stdout_of(&one), stdout_of(&two));

    let env_run = Command::new(env!("CARGO_BIN_EXE_gridmis"))
        .args(["count", "-m", "8", "-n", "9"])
        .env("GRIDMIS_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&env_run), stdout_of(&one));
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("gridmis-cli-test-{name}-{}", std::process::id()));
    let mut file = std::fs::File::create(&path).unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn mosaic_convert_both_directions() {
    let vs = write_temp("unit-set", "1\n");
    let out = gridmis(&["mosaic", "convert", vs.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "a.a.a.a");

    let tiling = write_temp("unit-mosaic", "a.a.a.a\n");
    let out = gridmis(&["mosaic", "convert", tiling.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "1");
}

#[test]
fn mosaic_digits_of_anti_diagonal() {
    let vs = write_temp("anti-diagonal", "10\n01\n");
    let out = gridmis(&["mosaic", "digits", vs.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "02\n20\n");
}

#[test]
fn mosaic_validate_names_the_violated_rule() {
    let bad = write_temp("boundary-c", "b.b.c.b\n");
    let out = gridmis(&["mosaic", "validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).contains("boundary state requirement"));

    let good = write_temp("good", "a.a.a.a\n");
    let out = gridmis(&["mosaic", "validate", good.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("suitably_adjacent: true"));
    assert!(stdout_of(&out).contains("boundary_ok: true"));
}

#[test]
fn mosaic_convert_rejects_non_mis_with_witness() {
    let vs = write_temp("non-mis", "00\n01\n");
    let out = gridmis(&["mosaic", "convert", vs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not maximal"));
}

#[test]
fn exit_codes_distinguish_usage_and_resources() {
    // Invalid arguments: clap rejects m = 0.
    let out = gridmis(&["count", "-m", "0", "-n", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Resource refusal: width above the default budget.
    let out = gridmis(&["count", "-m", "13", "-n", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("limit 12"));

    // The override flag moves the budget (here: down, which is cheap).
    let out = gridmis(&["count", "-m", "6", "-n", "1", "--max-width-override", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let out = gridmis(&["count", "-m", "5", "-n", "1", "--max-width-override", "5"]);
    assert!(out.status.success());
    assert_eq!(first_line(&out), "4");
}

#[test]
fn oversized_oracle_request_is_a_resource_refusal() {
    let out = gridmis(&["verify", "--max-cells", "25"]);
    assert_eq!(out.status.code(), Some(2)); // clap range rejects it
}
