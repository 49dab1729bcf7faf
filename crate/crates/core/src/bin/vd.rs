use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vdlab::design::RuleParam;
use vdlab::exact::Exact;
use vdlab::report::{render_report, run, Format, RunOptions, Stages};
use vdlab::scenario::{resolve_scenario, ScenarioError, BUNDLED};
use vdlab::solver::{Mode, SelectionRule};

#[derive(Parser)]
#[command(name = "vd", version, about = "Villager's dilemma game laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output format: table, json or csv.
    #[arg(long, default_value = "table")]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Equilibria, Pareto front, dominance and selection for a scenario.
    Analyze {
        /// Scenario file or bundled scenario name.
        scenario: String,
        #[arg(long)]
        equilibria: Option<Mode>,
        #[arg(long)]
        select: Option<SelectionRule>,
        #[command(flatten)]
        output: Output,
    },
    /// Repeated play with the scenario's agents.
    Simulate {
        scenario: String,
        #[arg(long)]
        rounds: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Rank the scenario's rule grid by robber revenue.
    Design {
        scenario: String,
        #[arg(long)]
        require_effective: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep one rule parameter and report regime flips.
    Sweep {
        scenario: String,
        #[arg(long)]
        param: RuleParam,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<Exact>,
        #[command(flatten)]
        output: Output,
    },
    /// Print the bundled scenario names.
    ListScenarios,
}

fn execute(command: Command) -> Result<(), ScenarioError> {
    let (arg, options, output) = match command {
        Command::ListScenarios => {
            for (name, description, _) in BUNDLED {
                println!("{name:<16}{description}");
            }
            return Ok(());
        }
        Command::Analyze {
            scenario,
            equilibria,
            select,
            output,
        } => (
            scenario,
            RunOptions {
                equilibria,
                select,
                ..RunOptions::default()
            },
            output,
        ),
        Command::Simulate {
            scenario,
            rounds,
            seed,
            output,
        } => (
            scenario,
            RunOptions {
                stages: Stages {
                    analysis: false,
                    dynamics: true,
                    design: false,
                },
                rounds,
                seed,
                ..RunOptions::default()
            },
            output,
        ),
        Command::Design {
            scenario,
            require_effective,
            output,
        } => (
            scenario,
            RunOptions {
                stages: Stages {
                    analysis: false,
                    dynamics: false,
                    design: true,
                },
                require_effective: require_effective.then_some(true),
                ..RunOptions::default()
            },
            output,
        ),
        Command::Sweep {
            scenario,
            param,
            values,
            output,
        } => (
            scenario,
            RunOptions {
                stages: Stages {
                    analysis: false,
                    dynamics: false,
                    design: true,
                },
                sweep: Some((param, values)),
                ..RunOptions::default()
            },
            output,
        ),
    };

    let (name, scenario) = resolve_scenario(&arg)?;
    let report = run(&name, &scenario, &options)?;
    let text = render_report(&report, output.format);
    match output.out {
        Some(path) => std::fs::write(&path, text).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("vd: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
