//! End-to-end runs of the compiled binary: documented examples, exit
//! codes, and report stability.

use serde_json::Value;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crossed"))
}

fn write_file(contents: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(contents.as_bytes()).expect("write");
    file
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (value, code)
}

fn path_arg(file: &NamedTempFile) -> &str {
    file.path().to_str().expect("utf-8 temp path")
}

#[test]
fn analyze_reports_periodic_points_and_commutant_verdict() {
    let sys = write_file("[1, 0, 2]");
    let (report, code) = run_json(&["analyze", "--system", path_arg(&sys)]);
    assert_eq!(code, 0);
    assert_eq!(report["version"], 1);
    assert_eq!(report["per"][0]["n"], 1);
    assert_eq!(report["per"][0]["points"], serde_json::json!([2]));
    assert_eq!(report["maximal_abelian"]["holds"], false);
    assert_eq!(report["system"]["cycles"], "(0 1)(2)");
    // Every point of a finite system is periodic, so the commutant always
    // sticks out of the coefficients; even the one-point identity fails.
    let id1 = write_file("[0]");
    let (report, code) = run_json(&["analyze", "--system", path_arg(&id1)]);
    assert_eq!(code, 0);
    assert_eq!(report["maximal_abelian"]["holds"], false);
    assert_eq!(report["maximal_abelian"]["witness"], "e0*d");
}

#[test]
fn analyze_rejects_malformed_input() {
    let bad = write_file("not json");
    let out = run(&["analyze", "--system", path_arg(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let not_a_map = write_file("[1, 0, \"x\"]");
    let out = run(&["analyze", "--system", path_arg(&not_a_map)]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze", "--system", "/nonexistent/system.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("--not-a-flag").output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_output_is_byte_stable() {
    let sys = write_file("[1, 2, 0, 3]");
    let first = run(&["analyze", "--system", path_arg(&sys)]);
    let second = run(&["analyze", "--system", path_arg(&sys)]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn analyze_runs_the_seeded_axiom_suite() {
    let sys = write_file("[1, 0, 2]");
    let (report, code) = run_json(&[
        "analyze",
        "--system",
        path_arg(&sys),
        "--axiom-triples",
        "100",
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["axiom_suite"]["all_hold"], true);
    assert_eq!(report["axiom_suite"]["triples"], 100);
}

#[test]
fn reduce_produces_a_replayable_certificate() {
    let sys = write_file("[1, 0, 2]");
    let (report, code) = run_json(&[
        "reduce",
        "--system",
        path_arg(&sys),
        "--element",
        "e0*d^1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["output"], "e0");
    assert_eq!(report["replay"], "ok");
    assert_eq!(report["containment"]["output_in_ideal_window"], true);
    let steps = report["steps"].as_array().expect("steps array");
    assert!(steps.len() <= 2);
}

#[test]
fn reduce_rejects_out_of_range_points() {
    let sys = write_file("[1, 0, 2]");
    let out = run(&["reduce", "--system", path_arg(&sys), "--element", "e7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["reduce", "--system", path_arg(&sys), "--element", "e0 ++ e1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_random_suite_is_seeded() {
    let sys = write_file("[1, 2, 0]");
    let (report, code) = run_json(&[
        "reduce",
        "--system",
        path_arg(&sys),
        "--random",
        "25",
        "--seed",
        "9",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["random"]["all_replayed"], true);
    assert_eq!(report["random"]["count"], 25);
}

#[test]
fn ideal_membership_sets_the_exit_code() {
    let sys = write_file("[1, 0, 2]");
    let (report, code) = run_json(&[
        "ideal",
        "--system",
        path_arg(&sys),
        "--generator",
        "e2 + e2*d",
        "--probe",
        "e2 + e2*d",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["probe"]["membership"], "yes");
    assert_eq!(report["coefficient_algebra_meet_dim"], 0);
    assert_eq!(report["certificates"], "verified");

    let out = run(&[
        "ideal",
        "--system",
        path_arg(&sys),
        "--generator",
        "e2 + e2*d",
        "--probe",
        "e0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn between_modes_report_their_verdicts() {
    let sys = write_file("[1, 0, 2, 3]");
    let (report, code) = run_json(&[
        "between",
        "--system",
        path_arg(&sys),
        "--mode",
        "avoiding",
        "--n",
        "1",
        "--u1",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["strictly_between"], true);
    assert_eq!(report["avoids_nonzero_ideal"], true);
    assert_eq!(report["witness_ideal"]["meet_with_between_dim"], 0);

    let sys = write_file("[1, 0, 2]");
    let (report, code) = run_json(&[
        "between",
        "--system",
        path_arg(&sys),
        "--mode",
        "intersecting",
        "--base-point",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["intersection_property"], true);
    assert_eq!(report["probe"]["refuted"], false);
}

#[test]
fn laurent_witness_and_membership() {
    let (report, code) = run_json(&["laurent", "--f", "t + t^-1", "--roots", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["witness"]["product"], "t^-1 - 5/2 + t");
    assert_eq!(report["witness"]["replay"], "ok");

    let (report, code) = run_json(&[
        "laurent",
        "--roots",
        "2,1/2",
        "--member",
        "t + t^-1 - 5/2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["member"]["in_ideal"], true);
    assert_eq!(report["member"]["vanishes_at_roots"], true);

    let out = run(&["laurent", "--roots", "2", "--member", "t - 1"]);
    assert_eq!(out.status.code(), Some(1));
    // A root pinned at zero names the whole ring; reject it up front.
    let out = run(&["laurent", "--f", "t", "--roots", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .expect("utf-8 fixture path")
        .to_string()
}

#[test]
fn gelfand_diagonalizes_the_group_algebra() {
    let (report, code) = run_json(&["gelfand", "--algebra", &fixture("z2.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["semisimple"], true);
    assert_eq!(
        report["characters"],
        serde_json::json!([["1", "1"], ["1", "-1"]])
    );
    assert_eq!(report["basis_transports"][1]["image"], "e0 - e1");
    assert_eq!(report["induced_sigma"], serde_json::json!([0, 1]));
    assert_eq!(report["triquiv"]["verdicts_agree"], true);
    assert_eq!(report["triquiv"]["maximal_abelian"], false);
}

#[test]
fn gelfand_refuses_a_nilpotent_algebra() {
    let (report, code) = run_json(&["gelfand", "--algebra", &fixture("nilpotent.json")]);
    assert_eq!(code, 1);
    assert_eq!(report["semisimple"], false);
}

#[test]
fn banach_reports_run_clean() {
    let sys = write_file("[1, 0, 2]");
    let (report, code) = run_json(&["banach", "--system", path_arg(&sys), "--report", "characters"]);
    assert_eq!(code, 0);
    assert_eq!(report["fixed_points"], serde_json::json!([2]));
    assert_eq!(report["twist_powers_check"], true);

    let (report, code) = run_json(&["banach", "--system", path_arg(&sys), "--report", "commutator"]);
    assert_eq!(code, 0);
    assert_eq!(report["equals_fixed_point_kernel"], true);

    let (report, code) = run_json(&[
        "banach",
        "--system",
        path_arg(&sys),
        "--report",
        "modular",
        "--point",
        "2",
        "--twist",
        "3/5+4/5i",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["codim_is_one"], true);
    assert_eq!(report["contains_commutator_window"], true);

    let (report, code) = run_json(&[
        "banach",
        "--system",
        path_arg(&sys),
        "--report",
        "norm",
        "--element",
        "3/4*e0 + e1*d^2 - i*e2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["l1_norm_exact"], "2");

    // A point that moves is not a character base point.
    let out = run(&[
        "banach",
        "--system",
        path_arg(&sys),
        "--report",
        "modular",
        "--point",
        "0",
        "--twist",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_mode_prints_a_single_summary_line() {
    let sys = write_file("[1, 0, 2]");
    let out = run(&["analyze", "--system", path_arg(&sys), "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).expect("utf-8");
    assert_eq!(text.trim_end().lines().count(), 1);
    assert!(text.contains("maximal abelian"));
}
