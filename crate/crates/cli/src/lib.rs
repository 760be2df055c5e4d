//! Command implementations behind the `lapvalent` binary. Each command writes
//! its report to the given writer and returns the process exit status.

use std::io::{self, Write};
use std::time::Duration;

use lapvalent_core::laplacian::{first_violation, Violation};
use lapvalent_core::search::{search_valent, Alphabet, SearchOptions, SearchOutcome};
use lapvalent_core::{parse_graph6, Certificate, Error, ErrorClass, Valuation};
use serde::Serialize;

pub mod classify;
pub mod generate;
pub mod transform;

/// Value of the top-level `"schema"` field of every JSON document.
pub const SCHEMA: &str = "lapvalent/1";

/// Default search budget in milliseconds when `--time-budget-ms` is absent.
pub const TIME_BUDGET_ENV: &str = "LAPVALENT_TIME_BUDGET_MS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    /// negative verdict or failed precondition
    Domain = 1,
    Malformed = 2,
    /// size bound or time budget
    Resource = 3,
}

impl From<ErrorClass> for Exit {
    fn from(class: ErrorClass) -> Exit {
        match class {
            ErrorClass::Domain => Exit::Domain,
            ErrorClass::Malformed => Exit::Malformed,
            ErrorClass::Resource => Exit::Resource,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Core(e) => e.class().into(),
            CliError::Usage(_) => Exit::Malformed,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => Exit::Resource,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Usage(_) => "Usage",
            CliError::Io(_) => "Io",
            CliError::Csv(_) => "Csv",
            CliError::Json(_) => "Json",
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A certificate as emitted on the command line: the valuation uses the same
/// literal format `check` accepts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub valuation: String,
    pub lambda: i64,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            valuation: c.valuation().to_string(),
            lambda: c.lambda(),
        }
    }
}

#[derive(Serialize)]
struct ErrorReport {
    schema: &'static str,
    error: &'static str,
    message: String,
    exit: u8,
}

/// Writes `err` as a JSON error document and returns its exit status.
pub fn report_error(out: &mut impl Write, err: &CliError) -> Exit {
    let exit = err.exit();
    let report = ErrorReport {
        schema: SCHEMA,
        error: err.name(),
        message: err.to_string(),
        exit: exit as u8,
    };
    if serde_json::to_writer(&mut *out, &report).is_ok() {
        let _ = writeln!(out);
    }
    exit
}

pub(crate) fn emit(out: &mut impl Write, value: &impl Serialize) -> CliResult<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct CheckReport {
    schema: &'static str,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<Violation>,
}

pub fn check(out: &mut impl Write, graph6: &str, vector: &str, lambda: i64) -> CliResult<Exit> {
    let g = parse_graph6(graph6)?;
    let v: Valuation = vector.parse()?;
    let violation = first_violation(&g, &v, lambda)?;
    emit(
        out,
        &CheckReport {
            schema: SCHEMA,
            verified: violation.is_none(),
            violation,
        },
    )?;
    Ok(if violation.is_none() { Exit::Ok } else { Exit::Domain })
}

#[derive(Debug, Clone, Default)]
pub struct SearchArgs {
    pub alphabet: Option<Alphabet>,
    pub lambda: Option<i64>,
    /// Every certificate instead of the first.
    pub all: bool,
    pub time_budget: Option<Duration>,
}

#[derive(Serialize)]
struct SearchReport {
    schema: &'static str,
    graph6: String,
    alphabet: Alphabet,
    certificates: Vec<CertificateJson>,
    exhausted: bool,
    nodes: u64,
    prunes: u64,
    micros: u64,
}

/// Runs the search. Exits 1 when the space was exhausted without a
/// certificate and 3 when the budget ran out first.
pub fn search(out: &mut impl Write, graph6: &str, args: &SearchArgs) -> CliResult<Exit> {
    let g = parse_graph6(graph6)?;
    let alphabet = args.alphabet.unwrap_or(Alphabet::Trivalent);
    let mut opts = SearchOptions::new(alphabet);
    if let Some(lambda) = args.lambda {
        opts = opts.with_lambda(lambda);
    }
    if !args.all {
        opts = opts.with_limit(1);
    }
    if let Some(budget) = args.time_budget {
        opts = opts.with_time_budget(budget);
    }
    let outcome: SearchOutcome = search_valent(&g, &opts)?;
    let exit = match (outcome.certificates.is_empty(), outcome.exhausted) {
        (false, _) => Exit::Ok,
        (true, true) => Exit::Domain,
        (true, false) => Exit::Resource,
    };
    emit(
        out,
        &SearchReport {
            schema: SCHEMA,
            graph6: g.to_string(),
            alphabet,
            certificates: outcome.certificates.iter().map(CertificateJson::from).collect(),
            exhausted: outcome.exhausted,
            nodes: outcome.stats.nodes,
            prunes: outcome.stats.prunes,
            micros: outcome.stats.elapsed.as_micros() as u64,
        },
    )?;
    Ok(exit)
}

pub(crate) fn pairs(args: &[usize]) -> CliResult<Vec<(usize, usize)>> {
    if !args.len().is_multiple_of(2) {
        return Err(CliError::Usage(format!(
            "expected an even number of vertex ids, got {}",
            args.len()
        )));
    }
    Ok(args.chunks(2).map(|p| (p[0], p[1])).collect())
}

pub(crate) fn expect_len(args: &[usize], n: usize, what: &str) -> CliResult<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} takes {n} arguments, got {}", args.len())))
    }
}
