use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod bench;
mod commands;
mod error;
mod run;

use error::CliError;
use run::Alg;

#[derive(Parser)]
#[command(name = "vcdim", version, about = "VC-dimension of hypergraphs and graph set systems, with certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact VC-dimension and print a certificate document
    Solve {
        /// Input file (`.hg`, `.gr` instance or DIMACS `.col`)
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Alg::Auto)]
        alg: Alg,
        /// PACE `.td` decomposition for the treewidth solver
        #[arg(long, value_name = "FILE")]
        td: Option<PathBuf>,
        /// Largest pattern size handled by the DP
        #[arg(long, value_name = "K", env = "VCDIM_PATTERN_CAP", default_value_t = vcdim::twdp::DEFAULT_PATTERN_CAP)]
        pattern_cap: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the 1-additive approximation
    Approx {
        input: PathBuf,
        /// Decide between "shattered set of size k-1" and "nothing of size k"
        #[arg(long, conflicts_with = "max", required_unless_present = "max")]
        k: Option<usize>,
        /// Search downward from the degree bound
        #[arg(long)]
        max: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Write a min-fill tree decomposition in PACE `.td` format
    Decompose {
        input: PathBuf,
        /// Write the nice form instead
        #[arg(long)]
        nice: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Generate instances
    Gen {
        #[command(subcommand)]
        what: commands::GenCommand,
        #[arg(long, value_name = "FILE", global = true)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate document against its input
    Verify { certificate: PathBuf, input: PathBuf },
    /// Run a manifest of `<input> <alg>` lines and append run records
    Bench {
        manifest: PathBuf,
        /// Append-only JSON-lines results file
        #[arg(long, value_name = "FILE", default_value = "bench_results.jsonl")]
        results: PathBuf,
        #[arg(long, value_name = "N", default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_name = "K", env = "VCDIM_PATTERN_CAP", default_value_t = vcdim::twdp::DEFAULT_PATTERN_CAP)]
        pattern_cap: usize,
    },
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { input, alg, td, pattern_cap, json, out } => {
            commands::solve(&input, alg, td.as_deref(), pattern_cap, json, out.as_deref())
        }
        Command::Approx { input, k, max: _, json, out } => commands::approx(&input, k, json, out.as_deref()),
        Command::Decompose { input, nice, out } => commands::decompose(&input, nice, out.as_deref()),
        Command::Gen { what, out } => commands::generate(what, out.as_deref()),
        Command::Verify { certificate, input } => commands::verify(&certificate, &input),
        Command::Bench { manifest, results, jobs, pattern_cap } => bench::run(&manifest, &results, jobs, pattern_cap),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { error::EXIT_INPUT as u8 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vcdim: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
