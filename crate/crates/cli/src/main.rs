use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use lapvalent_cli::classify::{self, ClassifyOptions, Format};
use lapvalent_cli::generate::{self, Family};
use lapvalent_cli::transform::{self, Op};
use lapvalent_cli::{report_error, CliResult, Exit, SearchArgs, TIME_BUDGET_ENV};
use lapvalent_core::search::Alphabet;

/// Laplacian eigenvectors with entries in {-1,+1} or {-1,0,+1}.
///
/// Exit status: 0 success, 1 negative verdict or failed precondition,
/// 2 malformed input, 3 size bound or time budget exceeded.
#[derive(Parser)]
#[command(name = "lapvalent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphabetArg {
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check that VECTOR is a Laplacian eigenvector of GRAPH6 with eigenvalue LAMBDA.
    Check {
        graph6: String,
        /// Comma-separated integers, e.g. 1,0,-1
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(allow_hyphen_values = true)]
        lambda: i64,
    },
    /// Search for a bivalent (2) or trivalent (3) certificate.
    Search {
        graph6: String,
        #[arg(long, value_enum, default_value = "3")]
        alphabet: AlphabetArg,
        /// Only try this eigenvalue.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        /// List every certificate rather than the first.
        #[arg(long)]
        all: bool,
        #[arg(long, env = TIME_BUDGET_ENV)]
        time_budget_ms: Option<u64>,
    },
    /// Classify graph6 lines read from standard input.
    Classify {
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Budget for each search.
        #[arg(long, env = TIME_BUDGET_ENV)]
        time_budget_ms: Option<u64>,
        /// Lines processed together on the worker pool.
        #[arg(long, default_value_t = classify::DEFAULT_BATCH)]
        batch: usize,
    },
    /// Apply an eigenvector-preserving or eigenvalue-shifting edit.
    Transform {
        graph6: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long, value_enum)]
        op: Op,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',')]
        args: Vec<usize>,
    },
    /// Emit graphs from the constructive families.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated family parameters.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<usize>,
        /// Also write the graphs in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn run(cmd: Command, out: &mut impl Write) -> CliResult<Exit> {
    match cmd {
        Command::Check { graph6, vector, lambda } => lapvalent_cli::check(out, &graph6, &vector, lambda),
        Command::Search {
            graph6,
            alphabet,
            lambda,
            all,
            time_budget_ms,
        } => {
            let args = SearchArgs {
                alphabet: Some(match alphabet {
                    AlphabetArg::Two => Alphabet::Bivalent,
                    AlphabetArg::Three => Alphabet::Trivalent,
                }),
                lambda,
                all,
                time_budget: time_budget_ms.map(Duration::from_millis),
            };
            lapvalent_cli::search(out, &graph6, &args)
        }
        Command::Classify {
            format,
            time_budget_ms,
            batch,
        } => {
            let opts = ClassifyOptions {
                format: match format {
                    FormatArg::Csv => Format::Csv,
                    FormatArg::Json => Format::Json,
                },
                time_budget: time_budget_ms.map(Duration::from_millis),
                batch,
            };
            classify::classify(io::stdin().lock(), &mut *out, &opts)
        }
        Command::Transform {
            graph6,
            vector,
            lambda,
            op,
            args,
        } => transform::transform(out, &graph6, &vector, lambda, op, &args),
        Command::Generate { family, params, dot } => generate::generate(out, family, &params, dot.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let exit = match run(cli.command, &mut out) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("lapvalent: {e}");
            report_error(&mut out, &e)
        }
    };
    let _ = out.flush();
    ExitCode::from(exit as u8)
}
