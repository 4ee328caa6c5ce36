//! End-to-end acceptance checks. Each test prints one PASS/FAIL line and the
//! JSON detail, then asserts the outcome.

use mvgb::checks::{self, Criterion};

fn report(c: Criterion) {
    println!("{}", c.line());
    println!("{}", serde_json::to_string(&c.detail).unwrap());
    assert!(c.passed, "criterion {} failed: {}", c.id, c.name);
}

const FULL: usize = usize::MAX;

#[test]
fn c01_generic_initial_ideal() {
    report(checks::generic_initial_ideal(FULL));
}

#[test]
fn c02_universal_basis() {
    report(checks::universal_basis(FULL));
}

#[test]
fn c03_hilbert_identities() {
    report(checks::hilbert_identities(FULL));
}

#[test]
fn c04_focal_dichotomy() {
    report(checks::focal_dichotomy());
}

#[test]
fn c05_prime_decomposition() {
    report(checks::prime_decomposition(FULL));
}

#[test]
fn c06_toric_three_cameras() {
    report(checks::toric_three());
}

#[test]
fn c07_toric_four_cameras() {
    report(checks::toric_four());
}

#[test]
fn c08_degeneration_chain() {
    report(checks::degeneration_chain(FULL));
}

#[test]
fn c09_tangent_dimensions() {
    report(checks::tangent_dimensions(FULL));
}

#[test]
fn c10_census() {
    report(checks::census_three());
}

#[test]
fn c11_fundamental_matrices() {
    report(checks::fundamental_matrices());
}
