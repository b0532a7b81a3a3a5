//! Runs the verification suites on a built-in corpus and prints a summary.
//!
//! `cargo run --release --example verify_corpus -- standard`

use lorentz_weierstrass::verify::{verify_corpus, VerifyOptions};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "example".into());
    let report = verify_corpus(&name, &VerifyOptions::default()).expect("known corpus");
    for c in &report.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!(
            "{mark} {:<40} {:>10.3e} (tol {:.0e})",
            c.name, c.max_scaled_error, c.tolerance
        );
    }
    for f in &report.findings {
        println!(
            "note {}: {} ({} vs {})",
            f.name, f.classification, f.formula_value, f.closed_form_value
        );
    }
    println!("passed: {}", report.passed);
}
