//! Runs the full comparison grid with default parameters and prints the table.
//!
//! `cargo run --release -p apcosa --example table -- [trials] [threads]`

use apcosa::{emit_table, run_experiment, TrialConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let threads = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let config = TrialConfig { trials, threads, master_seed: 1, ..Default::default() };
    let report = run_experiment::<f64>(&config).expect("experiment");
    print!("{}", emit_table(&report));
    for cell in &report.cells {
        println!(
            "{:<7}{:<3} mean best {:>12.6e}  per-success {:.4}s",
            cell.algorithm.name(),
            cell.benchmark.name(),
            cell.mean_best_value(),
            cell.time_per_success()
        );
    }
}
