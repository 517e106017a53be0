//! Acceptance suite: runs every verification suite and prints one line per
//! criterion. Each test covers one criterion at its stated tolerance.

use dilink::verify::{run_suite, Check};

fn run(criterion: usize, name: &str) {
    let start = std::time::Instant::now();
    let checks = run_suite(name, 0).unwrap_or_else(|e| {
        panic!("criterion {criterion} ({name}): suite error: {e}");
    });
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion:2} ({name}): {status} [{} checks, {:.2?}]",
        checks.len(),
        start.elapsed()
    );
    for c in &checks {
        println!("    [{}] {} {}", if c.passed { "ok" } else { "FAIL" }, c.name, if c.passed { String::new() } else { format!("- {}", c.details) });
    }
    assert!(
        failed.is_empty(),
        "criterion {criterion} ({name}) failed: {:?}",
        failed
            .iter()
            .map(|c| format!("{}: {}", c.name, c.details))
            .collect::<Vec<_>>()
    );
}

#[test]
fn criterion_01_construction_arithmetic() {
    run(1, "construction");
}

#[test]
fn criterion_02_acyclicity_and_disjointness() {
    run(2, "acyclicity");
}

#[test]
fn criterion_03_density_certificate() {
    run(3, "density");
}

#[test]
fn criterion_04_linking_engine() {
    run(4, "linking");
}

#[test]
fn criterion_05_knot_invariants() {
    run(5, "knots");
}

#[test]
fn criterion_06_four_ring_odd_arf() {
    run(6, "d4");
}

#[test]
fn criterion_07_doubling_counts() {
    run(7, "doubling");
}

#[test]
fn criterion_08_bigon_homology_and_repair() {
    run(8, "bigon_repair");
}

#[test]
fn criterion_09_minor_calculus() {
    run(9, "minors");
}

#[test]
fn criterion_10_gadget_census() {
    run(10, "gadget_census");
}

#[test]
fn criterion_11_contraction_preserves_linklessness() {
    run(11, "contraction");
}
