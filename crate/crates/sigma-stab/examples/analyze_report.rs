//! Produces the same JSON document the command-line `analyze` subcommand
//! emits, entirely through the library API — useful for embedding the
//! analysis in another program — and prints the per-stage wall-clock
//! breakdown of the pipeline.

use std::path::Path;

use sigma_stab::cli::analyze_document;
use sigma_stab::matcore::Matrix;
use sigma_stab::stability::{analyze_timed, AnalyzeOptions};

fn main() {
    let m = Matrix::from_rows(&[
        &[-1.5, 1.0, 2.0],
        &[1.0, -2.5, 0.5],
        &[2.0, 1.0, -1.0],
    ])
    .unwrap();
    let opts = AnalyzeOptions::default();

    let (report, timings) = analyze_timed(&m, &opts).unwrap();
    println!("stage timings (ms):");
    println!("  coefficient extraction: {:>8.3}", timings.coefficients_ms);
    println!("  real-root isolation:    {:>8.3}", timings.omega_ms);
    println!("  critical-sigma search:  {:>8.3}", timings.critical_ms);
    println!("  identity checks:        {:>8.3}", timings.checks_ms);
    println!("  total:                  {:>8.3}", timings.total_ms);
    println!("\nsigma_star = {:.10} ({})", report.sigma_star, report.crossing);

    let doc = analyze_document(&m, Path::new("<in-memory>"), &opts).unwrap();
    println!("\nJSON document:\n{}", serde_json::to_string_pretty(&doc).unwrap());
}
