//! The acceptance suite: one test per criterion, so the harness prints a
//! single pass/fail line for each.

use sstrans::suite;

fn run(check: fn() -> suite::CheckResult) {
    if let Err(msg) = check() {
        panic!("{msg}");
    }
}

#[test]
fn criterion_01_generator_signatures() {
    run(suite::criterion_1_generator_signatures);
}

#[test]
fn criterion_02_shift_realization() {
    run(suite::criterion_2_shift_realization);
}

#[test]
fn criterion_03_group_laws() {
    run(suite::criterion_3_group_laws);
}

#[test]
fn criterion_04_signature_homomorphisms() {
    run(suite::criterion_4_signature_homomorphisms);
}

#[test]
fn criterion_05_mn_structure() {
    run(suite::criterion_5_mn_structure);
}

#[test]
fn criterion_06_reverse_automorphism() {
    run(suite::criterion_6_reverse_automorphism);
}

#[test]
fn criterion_07_hn_expulsion() {
    run(suite::criterion_7_hn_expulsion);
}

#[test]
fn criterion_08_fixture_facts() {
    run(suite::criterion_8_fixture_facts);
}

#[test]
fn criterion_09_markers() {
    run(suite::criterion_9_markers);
}

#[test]
fn criterion_10_conveyor_embedding() {
    run(suite::criterion_10_conveyor_embedding);
}

#[test]
fn criterion_11_lift() {
    run(suite::criterion_11_lift);
}
