//! Acceptance battery: one test per release criterion. Each prints the
//! criterion's one-line verdict and fails the build if the check fails.

use tsmlab_core::selftest;

fn gate(result: tsmlab_core::selftest::CriterionResult) {
    let line = result.line();
    println!("{line}");
    assert!(result.passed, "{line}");
}

#[test]
fn criterion_01_orthonormality() {
    gate(selftest::criterion_01_orthonormality());
}

#[test]
fn criterion_02_term_norms() {
    gate(selftest::criterion_02_term_norms());
}

#[test]
fn criterion_03_projection_consistency() {
    gate(selftest::criterion_03_projection_consistency());
}

#[test]
fn criterion_04_stencil_halving() {
    gate(selftest::criterion_04_stencil_halving());
}

#[test]
fn criterion_05_single_line_kernel() {
    gate(selftest::criterion_05_single_line_kernel());
}

#[test]
fn criterion_06_two_line_kernel() {
    gate(selftest::criterion_06_two_line_kernel());
}

#[test]
fn criterion_07_withheld_probe() {
    gate(selftest::criterion_07_withheld_probe());
}

#[test]
fn criterion_08_ratio_test() {
    gate(selftest::criterion_08_ratio_test());
}

#[test]
fn criterion_09_determinants() {
    gate(selftest::criterion_09_determinants());
}

#[test]
fn criterion_10_zero_circles() {
    gate(selftest::criterion_10_zero_circles());
}

#[test]
fn criterion_11_zero_separation() {
    gate(selftest::criterion_11_zero_separation());
}

#[test]
fn criterion_12_translate_intertwining() {
    gate(selftest::criterion_12_translate_intertwining());
}
