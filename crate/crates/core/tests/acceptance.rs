//! Acceptance criteria. Each criterion is its own test so `cargo test` reports
//! one pass/fail line per criterion; run with `--nocapture` for check counts.

use std::time::Instant;

use fusionkit::checks::{self, Report};
use fusionkit::{Context, Limits};

fn criterion(label: &str, f: impl FnOnce() -> fusionkit::Result<Report>) {
    let start = Instant::now();
    let report = f().unwrap_or_else(|e| panic!("{label}: error {e}"));
    let secs = start.elapsed().as_secs_f64();
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "{status} {label}: {} checks, {} failures, {} skipped ({secs:.1}s)",
        report.checks,
        report.failures.len(),
        report.skipped
    );
    for failure in report.failures.iter().take(20) {
        println!("    {failure}");
    }
    assert!(report.passed(), "{label} failed");
}

#[test]
fn criterion_1_sl2_closed_form() {
    criterion("1 sl2 closed form", || {
        let ctx = Context::new("A1".parse()?, Limits::default())?;
        checks::sl2_closed_form(&ctx, 8)
    });
}

#[test]
fn criterion_2_prv_equals_racah_speiser() {
    criterion("2 prv = racah-speiser", || checks::prv(Limits::default()));
}

#[test]
fn criterion_3_three_way_agreement() {
    criterion("3 three-way backend agreement", || {
        checks::three_way(&checks::three_way_cases(), Limits::default())
    });
}

#[test]
fn criterion_4_fusion_ring_axioms() {
    criterion("4 fusion-ring axioms", || checks::axioms(&checks::axiom_cases(), Limits::default()));
}

#[test]
fn criterion_5_high_level_threshold() {
    criterion("5 high-level threshold", || checks::threshold(Limits::default()));
}

#[test]
fn criterion_6_lemma_suite() {
    criterion("6 lemma suite", || checks::lemmas(Limits::default()));
}

#[test]
fn criterion_7_stability() {
    criterion("7 stability", || checks::stability(Limits::default()));
}

#[test]
fn criterion_8_recursion_matches_freudenthal() {
    criterion("8 recursion = freudenthal", || checks::multiplicity(Limits::default()));
}
