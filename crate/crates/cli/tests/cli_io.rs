//! End-to-end coverage of the command layer: stream formats, file
//! wiring, exit codes, and the determinism contract of check reports.

use std::collections::BTreeSet;
use std::fs;
use std::process::Command;

use cli::{cmd_graphs, cmd_splittings, cmd_star, run_suite, GENERATOR};
use double_poisson::DoubleBracket;
use free_algebra::rat_int;
use graphs::{num_splittings, AdmGraph, DGraph, DVertex, Splitting};
use oalgebra::{o_mul, OElem, OTerm, TraceMonomial};
use perm_core::Perm;
use quantize::{star, WeightTable};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ditwist"))
}

/// A grade-one element supported on the single generator word `x_k`.
fn generator(k: u8) -> OElem {
    let term = OTerm::new(vec![vec![k]], TraceMonomial::one(), Perm::identity(1));
    OElem::from_term(term, rat_int(1))
}

fn figure_graph() -> DGraph {
    DGraph::new(
        3,
        (1, 2),
        (1, 1),
        vec![
            (DVertex::LLoop(1), DVertex::Right(1)),
            (DVertex::Right(1), DVertex::Num(3, 1)),
            (DVertex::LLoop(1), DVertex::Right(1)),
        ],
    )
    .unwrap()
}

#[test]
fn graphs_streams_one_record_per_graph() {
    let lines: Vec<String> = cmd_graphs(1).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let g: AdmGraph = serde_json::from_str(line).unwrap();
        assert_eq!(g.n(), 1);
    }
    assert_eq!(cmd_graphs(0).unwrap().lines().count(), 1);
}

#[test]
fn graphs_rejects_a_negative_order() {
    let err = cmd_graphs(-1).unwrap_err();
    assert!(err.to_string().contains("nonnegative"), "{err}");
}

#[test]
fn splittings_of_a_single_edge_graph_form_one_record() {
    let g = DGraph::new(
        1,
        (1, 0),
        (1, 0),
        vec![(DVertex::Left(1), DVertex::Right(1))],
    )
    .unwrap();
    assert_eq!(num_splittings(&g), 1);
    let out = cmd_splittings(&serde_json::to_string(&g).unwrap()).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let record: Value = serde_json::from_str(lines[0]).unwrap();
    let _: Splitting = serde_json::from_value(record["splitting"].clone()).unwrap();
    assert!(record["perms"].is_object());
}

#[test]
fn splittings_of_the_figure_graph_form_twelve_distinct_records() {
    let out = cmd_splittings(&serde_json::to_string(&figure_graph()).unwrap()).unwrap();
    let lines: BTreeSet<&str> = out.lines().collect();
    assert_eq!(lines.len(), 12);
}

#[test]
fn splittings_reports_the_parse_location_of_bad_input() {
    let err = cmd_splittings("{\"n\": 1,").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("line 1"), "{msg}");
}

fn star_inputs() -> (String, String, String) {
    (
        serde_json::to_string(&generator(1)).unwrap(),
        serde_json::to_string(&generator(2)).unwrap(),
        serde_json::to_string(&DoubleBracket::constant(2).unwrap()).unwrap(),
    )
}

#[test]
fn star_at_order_zero_is_the_bare_product() {
    let (a, b, br) = star_inputs();
    let out = cmd_star(&a, &b, &br, 0, None).unwrap();
    let series: quantize::HbarSeries = serde_json::from_str(&out).unwrap();
    assert_eq!(series.coefficients().len(), 1);
    assert_eq!(*series.coefficient(0), o_mul(&generator(1), &generator(2)));
}

#[test]
fn star_without_a_table_entry_names_the_graph_key() {
    let (a, b, br) = star_inputs();
    let err = cmd_star(&a, &b, &br, 1, Some("{}")).unwrap_err();
    assert!(err.to_string().contains("no weight for graph key"), "{err}");
}

#[test]
fn star_at_order_one_matches_the_library_default() {
    let (a, b, br) = star_inputs();
    let out = cmd_star(&a, &b, &br, 1, None).unwrap();
    let want = star(
        &generator(1),
        &generator(2),
        1,
        &WeightTable::order_one(),
        &DoubleBracket::constant(2).unwrap(),
    )
    .unwrap();
    let mut text = serde_json::to_string_pretty(&want).unwrap();
    text.push('\n');
    assert_eq!(out, text);
}

#[test]
fn check_reports_are_byte_identical_across_runs() {
    let a = run_suite("permcalc", 2, 2, 9).unwrap();
    let b = run_suite("permcalc", 2, 2, 9).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn check_rejects_degenerate_configurations() {
    assert!(run_suite("permcalc", 0, 2, 0).is_err());
    assert!(run_suite("permcalc", 2, 0, 0).is_err());
    let err = run_suite("nonsense", 2, 2, 0).unwrap_err();
    assert!(err.to_string().contains("unknown suite"), "{err}");
}

#[test]
fn binary_exits_with_two_on_usage_errors() {
    let out = bin().args(["graphs", "-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["check", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("unknown suite"), "{stderr}");
}

#[test]
fn binary_check_emits_a_passing_report_with_the_generator_header() {
    let out = bin().args(["check", "counts"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["generator"], GENERATOR);
    assert_eq!(report["suite"], "counts");
    assert_eq!(report["passed"], true);
}

#[test]
fn binary_out_flag_writes_the_stdout_payload_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin()
        .args(["check", "permcalc", "--seed", "3", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = bin()
        .args(["check", "permcalc", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn binary_star_and_splittings_read_their_input_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, br) = star_inputs();
    let paths = [("alpha", a), ("beta", b), ("bracket", br)]
        .map(|(name, text)| {
            let p = dir.path().join(format!("{name}.json"));
            fs::write(&p, text).unwrap();
            p
        });
    let out = bin()
        .arg("star")
        .args(&paths)
        .args(["--order", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let series: quantize::HbarSeries = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(series.coefficients().len(), 1);

    let gpath = dir.path().join("graph.json");
    fs::write(&gpath, serde_json::to_string(&figure_graph()).unwrap()).unwrap();
    let out = bin().arg("splittings").arg(&gpath).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 12);
}
