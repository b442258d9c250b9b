//! Corpus regression suite as an integration test: one pass/fail line per
//! criterion, failing the test if any criterion fails.

use std::path::PathBuf;

use legdga_cli::acceptance;

#[test]
fn regression_criteria() {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let outcomes = acceptance::run_all(&corpus);
    assert_eq!(outcomes.len(), 9);
    let mut all_pass = true;
    for o in &outcomes {
        println!(
            "criterion {}: {} - {}",
            o.criterion,
            if o.pass { "pass" } else { "FAIL" },
            o.detail
        );
        all_pass &= o.pass;
    }
    assert!(all_pass, "at least one regression criterion failed");
}
