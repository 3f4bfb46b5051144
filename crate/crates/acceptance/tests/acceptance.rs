//! The acceptance gate: one test per contract criterion, each running
//! the corresponding check suite at the default configuration (d = 2,
//! N = 2, seed 0) and enforcing its wall-clock budget.

use std::time::Instant;

use cli::{run_suite, SUITES};

/// Runs one suite, prints its pass/fail line, and enforces the budget.
fn gate(criterion: usize, suite: &str, budget_s: u64) {
    let t0 = Instant::now();
    let report = run_suite(suite, 2, 2, 0).expect("suite configuration is valid");
    let elapsed = t0.elapsed();
    let verdict = if report.passed { "pass" } else { "fail" };
    println!(
        "criterion {criterion}: {verdict} ({suite}, {:.1}s, budget {budget_s}s)",
        elapsed.as_secs_f64()
    );
    for p in report.properties.iter().filter(|p| !p.pass) {
        println!("  failed property: {}", p.name);
        if let Some(c) = &p.counterexample {
            println!("  counterexample: {c}");
        }
    }
    assert!(report.passed, "criterion {criterion} failed in suite {suite}");
    assert!(
        elapsed.as_secs_f64() < budget_s as f64,
        "criterion {criterion} took {:.1}s, over the {budget_s}s budget",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_01_graph_counts() {
    gate(1, "counts", 60);
}

#[test]
fn criterion_02_splitting_bijection() {
    gate(2, "splittings", 60);
}

#[test]
fn criterion_03_bidifferential_operator_oracle() {
    gate(3, "cor2", 120);
}

#[test]
fn criterion_04_derivative_chain_oracle() {
    gate(4, "lemma12", 30);
}

#[test]
fn criterion_05_formality_component_oracle() {
    gate(5, "lemma13", 60);
}

#[test]
fn criterion_06_contraction_and_insertion_algebra() {
    gate(6, "pihat", 30);
}

#[test]
fn criterion_07_bracket_axioms() {
    gate(7, "axioms", 60);
}

#[test]
fn criterion_08_star_product_contract() {
    gate(8, "star", 60);
}

#[test]
fn criterion_09_permutation_calculus() {
    gate(9, "permcalc", 10);
}

#[test]
fn criterion_10_deterministic_reports() {
    for suite in SUITES {
        let a = run_suite(suite, 2, 2, 7).expect("suite configuration is valid");
        let b = run_suite(suite, 2, 2, 7).expect("suite configuration is valid");
        let a = serde_json::to_string(&a).expect("report serializes");
        let b = serde_json::to_string(&b).expect("report serializes");
        assert_eq!(a, b, "suite {suite} is not deterministic at a fixed seed");
    }
    println!("criterion 10: pass (identical reports for all {} suites)", SUITES.len());
}
