use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qedge::cli::{self, Aggregation, OutputFormat, RunConfig};
use qedge::qhed::DEFAULT_EPSILON;
use qedge::{Error, Execution, TrainingSet, Volume};

#[derive(Parser)]
#[command(name = "qedge", version, about = "Quantum state-vector demos and Hadamard edge detection on volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the non-zero amplitudes of the n-qubit GHZ state.
    Ghz {
        /// Number of qubits (2..=24).
        n: usize,
    },
    /// Evaluate a truth table on all inputs at once and print the state.
    Oracle {
        /// Truth table: first line "m k", then 2^m output values.
        truth_table: PathBuf,
    },
    /// Detect boundaries in one or more volume frames.
    ///
    /// Averaging is meaningful when the frames are blurry and span a short
    /// time window; it is not checked.
    Edges {
        #[arg(required = true)]
        volumes: Vec<PathBuf>,
        /// Threshold above which a difference counts as a boundary.
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Keep differences across column, slab and padding seams.
        #[arg(long)]
        keep_wraparound: bool,
        #[arg(long, value_enum, default_value_t = AggregateArg::None)]
        aggregate: AggregateArg,
        /// Multiply each frame's edges by its norm factor before aggregating.
        #[arg(long)]
        rescale_by_norm: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Read volumes in the binary format.
        #[arg(long)]
        binary: bool,
        /// Process frames one at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Fit a linear model to CSV data (features..., target) by gradient descent.
    Fit {
        csv: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        learning_rate: f64,
        #[arg(long, default_value_t = 10_000)]
        iterations: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AggregateArg {
    None,
    Average,
    ModeMost,
    ModeLeast,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Ghz { n } => cli::ghz_report(n),
        Command::Oracle { truth_table } => cli::oracle_report(&read(&truth_table)?),
        Command::Edges {
            volumes,
            epsilon,
            keep_wraparound,
            aggregate,
            rescale_by_norm,
            format,
            binary,
            sequential,
        } => {
            let frames = volumes
                .iter()
                .map(|p| Volume::load(p, binary))
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = RunConfig {
                epsilon,
                drop_wraparound: !keep_wraparound,
                aggregation: match aggregate {
                    AggregateArg::None => Aggregation::None,
                    AggregateArg::Average => Aggregation::Average,
                    AggregateArg::ModeMost => Aggregation::ModeMost,
                    AggregateArg::ModeLeast => Aggregation::ModeLeast,
                },
                rescale_by_norm,
                output_format: match format {
                    FormatArg::Json => OutputFormat::Json,
                    FormatArg::Csv => OutputFormat::Csv,
                },
                execution: if sequential { Execution::Sequential } else { Execution::Parallel },
            };
            cli::edges_report(frames, &cfg)
        }
        Command::Fit { csv, learning_rate, iterations } => {
            let file = std::fs::File::open(&csv).map_err(|e| Error::Io(format!("{}: {e}", csv.display())))?;
            let data = TrainingSet::from_csv(file)?;
            cli::fit_report(&data, learning_rate, iterations)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::from(cli::EXIT_OK)
        }
        Err(e) => {
            eprintln!("qedge: {e}");
            ExitCode::from(cli::exit_code(&e))
        }
    }
}
