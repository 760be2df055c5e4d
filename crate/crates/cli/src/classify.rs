//! Per-line classification of a graph6 stream.
//!
//! CSV header, one row per non-blank input line:
//!
//! | column | meaning |
//! |---|---|
//! | `line` | 1-based input line number |
//! | `graph6` | the input as read (trimmed) |
//! | `order`, `size` | vertex and edge counts |
//! | `connected` | `true` / `false` |
//! | `bivalent`, `trivalent` | `true` / `false` / `unknown` |
//! | `bivalent_valuation`, `bivalent_lambda` | witness, if any |
//! | `bivalent_structure` | regular-bipartite check on the witness |
//! | `regular_bipartite` | structural predicate on the graph itself (n ≤ 16) |
//! | `trivalent_valuation`, `trivalent_lambda` | witness, if any |
//! | `trivalent_structure` | structure check on the witness |
//! | `micros` | wall time for the line |
//! | `error` | error name and message; other columns are then empty |
//!
//! Lines are processed in batches on the worker pool and written in input
//! order, so memory stays bounded by the batch size.

use std::io::{BufRead, Write};
use std::time::{Duration, Instant};

use lapvalent_core::characterize::{
    bivalent_structure_check, regular_bipartite_witness, trivalent_structure_check,
};
use lapvalent_core::par;
use lapvalent_core::search::{decide, SearchOptions, Verdict};
use lapvalent_core::{parse_graph6, Certificate, Graph, Valence};
use serde::Serialize;

use crate::{CliResult, Exit, SCHEMA};

pub const DEFAULT_BATCH: usize = 256;

/// Largest order for the `regular_bipartite` column.
pub const STRUCTURE_SCAN_MAX: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub format: Format,
    /// Per-search budget; each line runs two searches.
    pub time_budget: Option<Duration>,
    pub batch: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            format: Format::Csv,
            time_budget: None,
            batch: DEFAULT_BATCH,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Record {
    pub line: usize,
    pub graph6: String,
    pub order: Option<usize>,
    pub size: Option<usize>,
    pub connected: Option<bool>,
    pub bivalent: Option<&'static str>,
    pub bivalent_valuation: Option<String>,
    pub bivalent_lambda: Option<i64>,
    pub bivalent_structure: Option<bool>,
    pub regular_bipartite: Option<bool>,
    pub trivalent: Option<&'static str>,
    pub trivalent_valuation: Option<String>,
    pub trivalent_lambda: Option<i64>,
    pub trivalent_structure: Option<bool>,
    pub micros: u64,
    pub error: Option<String>,
    #[serde(skip)]
    pub failure: Option<Exit>,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    schema: &'static str,
    #[serde(flatten)]
    record: &'a Record,
}

fn structure_ok(g: &Graph, cert: &Certificate) -> lapvalent_core::Result<bool> {
    let report = match cert.valence() {
        Valence::Bivalent => bivalent_structure_check(g, cert.valuation())?,
        _ => trivalent_structure_check(g, cert.valuation())?,
    };
    Ok(report.verdict)
}

fn fill(rec: &mut Record, g: &Graph, budget: Option<Duration>) -> lapvalent_core::Result<()> {
    rec.order = Some(g.order());
    rec.size = Some(g.size());
    rec.connected = Some(g.is_connected());

    let with_budget = |opts: SearchOptions| match budget {
        Some(b) => opts.with_time_budget(b),
        None => opts,
    };
    let bi = decide(g, &with_budget(SearchOptions::bivalent()))?;
    rec.bivalent = Some(bi.label());
    if let Some(c) = bi.certificate() {
        rec.bivalent_valuation = Some(c.valuation().to_string());
        rec.bivalent_lambda = Some(c.lambda());
        rec.bivalent_structure = Some(structure_ok(g, c)?);
    }
    if g.order() <= STRUCTURE_SCAN_MAX {
        rec.regular_bipartite = Some(regular_bipartite_witness(g)?.is_some());
    }

    // a bivalent witness is also a trivalent-alphabet witness
    let tri = match bi {
        Verdict::Yes(c) => Verdict::Yes(c),
        _ => decide(g, &with_budget(SearchOptions::trivalent()))?,
    };
    rec.trivalent = Some(tri.label());
    if let Some(c) = tri.certificate() {
        rec.trivalent_valuation = Some(c.valuation().to_string());
        rec.trivalent_lambda = Some(c.lambda());
        rec.trivalent_structure = Some(structure_ok(g, c)?);
    }
    Ok(())
}

/// Classifies one graph6 string.
pub fn classify_line(line: usize, text: &str, budget: Option<Duration>) -> Record {
    let start = Instant::now();
    let mut rec = Record {
        line,
        graph6: text.to_string(),
        ..Record::default()
    };
    let result = parse_graph6(text).and_then(|g| fill(&mut rec, &g, budget));
    if let Err(e) = result {
        rec = Record {
            line,
            graph6: text.to_string(),
            error: Some(format!("{}: {e}", e.name())),
            failure: Some(Exit::from(e.class())),
            ..Record::default()
        };
    }
    rec.micros = start.elapsed().as_micros() as u64;
    rec
}

struct Sink<W: Write> {
    format: Format,
    csv: Option<csv::Writer<W>>,
    json: Option<W>,
}

impl<W: Write> Sink<W> {
    fn new(format: Format, out: W) -> Self {
        match format {
            Format::Csv => Sink {
                format,
                csv: Some(csv::Writer::from_writer(out)),
                json: None,
            },
            Format::Json => Sink {
                format,
                csv: None,
                json: Some(out),
            },
        }
    }

    fn write(&mut self, rec: &Record) -> CliResult<()> {
        match self.format {
            Format::Csv => self.csv.as_mut().unwrap().serialize(rec)?,
            Format::Json => {
                let out = self.json.as_mut().unwrap();
                crate::emit(out, &JsonRecord { schema: SCHEMA, record: rec })?;
            }
        }
        Ok(())
    }

    fn flush(&mut self) -> CliResult<()> {
        match self.format {
            Format::Csv => self.csv.as_mut().unwrap().flush()?,
            Format::Json => self.json.as_mut().unwrap().flush()?,
        }
        Ok(())
    }
}

/// Reads graph6 lines from `input` until EOF. Exits 0 unless every line
/// failed, in which case the exit status of the most severe failure is
/// returned.
pub fn classify(input: impl BufRead, out: impl Write, opts: &ClassifyOptions) -> CliResult<Exit> {
    let batch_size = opts.batch.max(1);
    let mut sink = Sink::new(opts.format, out);
    let mut seen = 0usize;
    let mut worst: Option<Exit> = None;
    let mut all_failed = true;

    let mut batch: Vec<(usize, String)> = Vec::with_capacity(batch_size);
    let mut lines = input.lines().enumerate();
    loop {
        batch.clear();
        for (i, line) in lines.by_ref() {
            let line = line?;
            let text = line.trim();
            if !text.is_empty() {
                batch.push((i + 1, text.to_string()));
                if batch.len() == batch_size {
                    break;
                }
            }
        }
        if batch.is_empty() {
            break;
        }
        let records = par::map(&batch, |(i, text)| classify_line(*i, text, opts.time_budget));
        for rec in &records {
            seen += 1;
            match rec.failure {
                Some(e) => worst = worst.max(Some(e)),
                None => all_failed = false,
            }
            sink.write(rec)?;
        }
        sink.flush()?;
    }
    if seen > 0 && all_failed {
        return Ok(worst.unwrap_or(Exit::Malformed));
    }
    Ok(Exit::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(input: &str, format: Format) -> (Exit, String) {
        let mut buf = Vec::new();
        let opts = ClassifyOptions {
            format,
            batch: 2,
            ..Default::default()
        };
        let exit = classify(input.as_bytes(), &mut buf, &opts).unwrap();
        (exit, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn p3_is_trivalent_not_bivalent() {
        let rec = classify_line(1, "Bg", None);
        assert_eq!(rec.bivalent, Some("false"));
        assert_eq!(rec.trivalent, Some("true"));
        assert_eq!(rec.trivalent_structure, Some(true));
        assert_eq!(rec.regular_bipartite, Some(false));
        assert_eq!(rec.error, None);
    }

    #[test]
    fn malformed_line_inline() {
        let (exit, text) = run("A_\n??\nBg\n\nBw\n", Format::Csv);
        assert_eq!(exit, Exit::Ok);
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
        assert_eq!(rows.len(), 4);
        let lines: Vec<&str> = rows.iter().map(|x| &x[0]).collect();
        assert_eq!(lines, ["1", "2", "3", "5"]);
        assert!(rows[1][15].starts_with("MalformedGraph6"));
        assert_eq!(&rows[0][5], "true");
        assert_eq!(&rows[2][5], "false");
    }

    #[test]
    fn all_failures_exit_nonzero() {
        let (exit, text) = run("??\n!\n", Format::Json);
        assert_eq!(exit, Exit::Malformed);
        assert_eq!(text.lines().count(), 2);
        for l in text.lines() {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            assert_eq!(v["schema"], SCHEMA);
            assert!(v["error"].is_string());
        }
    }

    #[test]
    fn empty_input() {
        assert_eq!(run("", Format::Csv).0, Exit::Ok);
    }
}
