//! One test per acceptance criterion. Each prints a PASS/FAIL line with the
//! measured values; all comparisons are exact (zero tolerance).

use augpoly::acceptance::{run_criterion, SuiteConfig};

fn check(id: u8) {
    let result = run_criterion(id, &SuiteConfig::default());
    println!("{result}");
    assert!(result.passed, "{result}");
}

#[test]
fn criterion_1_monomial_count_sequence() {
    check(1);
}

#[test]
fn criterion_2_alpha_family_fingerprints() {
    check(2);
}

#[test]
fn criterion_3_beta11_orbit() {
    check(3);
}

#[test]
fn criterion_4_lambda1_orbit() {
    check(4);
}

#[test]
fn criterion_5_torus_knot_simplices() {
    check(5);
}

#[test]
fn criterion_6_conjugation_lemma() {
    check(6);
}

#[test]
fn criterion_7_unimodular_invariance() {
    check(7);
}

#[test]
fn criterion_8_counting_oracle() {
    check(8);
}

#[test]
fn criterion_9_face_monotonicity() {
    check(9);
}
