//! A small experiment battery: plan, run, emit CSV, correlate.
//!
//! Expands a grid over one TSPLIB instance, runs every cell in
//! parallel, writes the per-run records as CSV, and reports the
//! Pearson correlation between the sigma and div scores.

use std::path::Path;

use tspdiv::harness::corr::correlation_report;
use tspdiv::harness::records::{emit_records, RecordFormat, RecordRow};
use tspdiv::harness::{run_plan, ExperimentPlan};
use tspdiv::MutationKind;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut plan = ExperimentPlan::tsplib(
        &[(data.join("eil51.tsp"), data.join("eil51.opt.tour"))],
        &[5],
        &[0.05, 0.2, 0.5, 1.0],
        3,
    );
    plan.mutations = vec![MutationKind::TwoOpt];
    println!("running {} cells...", plan.run_count());

    let (records, summary) = run_plan(&plan, 2).expect("plan runs");
    for row in &summary {
        println!("{row}");
    }

    let dir = std::env::temp_dir();
    let path = emit_records(&records, RecordFormat::Csv, &dir).expect("emit");
    println!("wrote {}", path.display());

    let rows: Vec<RecordRow> = records.iter().map(RecordRow::from).collect();
    match correlation_report(&rows) {
        Ok(r) => println!("pearson r(sigma, div) = {r:.4}"),
        Err(e) => println!("correlation undefined: {e}"),
    }
}
