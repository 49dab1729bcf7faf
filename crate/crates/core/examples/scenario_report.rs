//! Runs a scenario file (or a bundled scenario name) and prints the report.
//!
//!     cargo run --example scenario_report -- lamborghini json

use vdlab::report::{render_report, run, Format, RunOptions};
use vdlab::scenario::resolve_scenario;

fn main() {
    let mut args = std::env::args().skip(1);
    let target = args.next().unwrap_or_else(|| "base".to_string());
    let format: Format = args.next().as_deref().unwrap_or("table").parse().unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    let outcome = resolve_scenario(&target).and_then(|(name, scenario)| run(&name, &scenario, &RunOptions::default()));
    match outcome {
        Ok(report) => print!("{}", render_report(&report, format)),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
