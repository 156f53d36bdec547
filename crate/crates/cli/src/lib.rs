//! `ccm` command-line front end.
//!
//! Commands: `seq`, `locate`, `tree`, `verify`, `table`. Exit codes: 0 on
//! success, 1 when a check fails, 2 on usage errors, 3 when a seed is
//! undecided at its budget (`seq --strict`, or `verify`).

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Deserialize;
use thiserror::Error;

use ccm_core::arith::{parse_natural, PosInt, PosOdd};
use ccm_core::matrices::{entry, locate, residue6};
use ccm_core::sequences::{self, SequenceRecord, DEFAULT_BUDGET};
use ccm_core::tree::{build_tree_with, ExportFormat};
use ccm_core::verify::{self, RandomSample, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "CCM_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "ccm", version, about = "Component connection model for the 3n+1 problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Syr,
    Col,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    A,
    B,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Syracuse or Collatz sequence of one or more seeds.
    Seq {
        /// Seeds, decimal or 0x-prefixed hexadecimal.
        #[arg(required = true)]
        seeds: Vec<String>,
        #[arg(long, value_enum, default_value = "syr")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Step budget per seed (Collatz steps for `col`, Syracuse steps for `syr`).
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Exit with status 3 when a seed runs out of budget.
        #[arg(long)]
        strict: bool,
        /// Include the terms in CSV output.
        #[arg(long)]
        terms: bool,
    },
    /// Report the matrix coordinate of an odd integer.
    Locate {
        n: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the component connection tree and export it.
    Tree {
        #[arg(long, default_value_t = 2)]
        levels: u32,
        #[arg(long = "max-p", default_value_t = 4)]
        max_p: u32,
        /// Largest connecting entry to follow; unbounded when omitted.
        #[arg(long = "max-value")]
        max_value: Option<String>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Keep entries divisible by 3 as black leaf nodes.
        #[arg(long)]
        black: bool,
    },
    /// Run bounded verification suites.
    Verify {
        /// Suites to run: all, L2.1, T2.6, T2.9, T2.10, T2.11, T2.12, T2.15, L3.3, sweep.
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
        /// Upper end of the scanned range (each suite has its own default).
        #[arg(long)]
        bound: Option<u64>,
        /// Lower end of the scanned range.
        #[arg(long)]
        from: Option<u64>,
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long = "max-x")]
        max_x: Option<u32>,
        #[arg(long = "max-q")]
        max_q: Option<u64>,
        /// Random large seeds added to T2.10 (0 disables).
        #[arg(long = "random-count")]
        random_count: Option<u64>,
        #[arg(long = "random-below")]
        random_below: Option<u64>,
        #[arg(long = "rng-seed")]
        rng_seed: Option<u64>,
        /// key = value file with defaults for bound, from, workers, budget.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Regenerate Table A or Table B as CSV.
    Table {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
        /// Rows of Table A, or columns y of Table B.
        #[arg(long, default_value_t = 16)]
        rows: u64,
        /// Largest row x of Table B.
        #[arg(long = "max-x", default_value_t = 8)]
        max_x: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Sweep defaults read from `--config`.
#[derive(Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub bound: Option<u64>,
    pub from: Option<u64>,
    pub workers: Option<usize>,
    pub budget: Option<u64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| usage(format!("bad config file: {e}")))
    }
}

/// Parses arguments and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    if let Err(e) = init_pool() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

/// Sizes the global thread pool from `CCM_WORKERS` when it is set.
fn init_pool() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Seq {
            seeds,
            kind,
            format,
            budget,
            strict,
            terms,
        } => cmd_seq(&seeds, kind, format, budget, strict, terms, out),
        Command::Locate { n, format } => cmd_locate(&n, format, out),
        Command::Tree {
            levels,
            max_p,
            max_value,
            format,
            black,
        } => cmd_tree(levels, max_p, max_value.as_deref(), format, black, out),
        Command::Verify {
            suites,
            bound,
            from,
            workers,
            budget,
            max_x,
            max_q,
            random_count,
            random_below,
            rng_seed,
            config,
            format,
        } => {
            if !matches!(format, Format::Text | Format::Json) {
                return Err(usage("verify supports --format text or json"));
            }
            let file = match config {
                Some(path) => FileConfig::parse(&std::fs::read_to_string(&path).map_err(|e| {
                    usage(format!("cannot read {}: {e}", path.display()))
                })?)?,
                None => FileConfig::default(),
            };
            let suites = parse_suites(&suites)?;
            let mut random = RandomSample::default();
            random.count = random_count.unwrap_or(random.count);
            random.below = random_below.unwrap_or(random.below);
            random.rng_seed = rng_seed.unwrap_or(random.rng_seed);
            if random.below < 2 {
                return Err(usage("--random-below must be at least 2"));
            }
            let cfg = VerifyConfig {
                from: from.or(file.from),
                bound: bound.or(file.bound),
                budget: budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
                workers: workers.or(file.workers),
                max_x: max_x.unwrap_or(8),
                max_q,
                random: (random.count > 0).then_some(random),
            };
            if let (Some(lo), Some(hi)) = (cfg.from, cfg.bound) {
                if lo > hi {
                    return Err(usage(format!("--from {lo} exceeds --bound {hi}")));
                }
            }
            if cfg.workers == Some(0) {
                return Err(usage("--workers must be at least 1"));
            }
            cmd_verify(&suites, &cfg, format, out)
        }
        Command::Table {
            which,
            rows,
            max_x,
        } => cmd_table(which, rows, max_x, out),
    }
}

fn parse_suites(names: &[String]) -> Result<Vec<Suite>, CliError> {
    let mut suites = Vec::new();
    for name in names.iter().flat_map(|n| n.split(',')) {
        if name.eq_ignore_ascii_case("all") {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>().map_err(|e| usage(e.to_string()))?);
        }
    }
    suites.sort();
    suites.dedup();
    Ok(suites)
}

fn parse_pos_int(s: &str) -> Result<PosInt, CliError> {
    let n = parse_natural(s).map_err(|e| usage(e.to_string()))?;
    PosInt::new(n).map_err(|e| usage(format!("{s}: {e}")))
}

fn parse_pos_odd(s: &str) -> Result<PosOdd, CliError> {
    let n = parse_natural(s).map_err(|e| usage(e.to_string()))?;
    PosOdd::new(n).map_err(|e| usage(format!("{s}: {e}")))
}

fn join(terms: &[BigUint]) -> String {
    terms
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_seq(
    seeds: &[String],
    kind: Kind,
    format: Format,
    budget: u64,
    strict: bool,
    with_terms: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if !matches!(format, Format::Text | Format::Json | Format::Csv) {
        return Err(usage("seq supports --format text, json or csv"));
    }
    // Validate every seed before computing anything.
    let parsed: Vec<PosInt> = seeds
        .iter()
        .map(|s| {
            let n = parse_pos_int(s)?;
            if kind == Kind::Syr && !n.is_odd() {
                return Err(usage(format!(
                    "Syracuse sequences need an odd seed, got {s}; use --kind col"
                )));
            }
            Ok(n)
        })
        .collect::<Result<_, _>>()?;

    let mut csv_out = (format == Format::Csv).then(|| csv::Writer::from_writer(Vec::new()));
    if let Some(w) = csv_out.as_mut() {
        let mut header = vec!["seed", "kind", "stopping_time", "max_term", "odd_steps", "truncated"];
        if with_terms {
            header.push("terms");
        }
        w.write_record(&header)?;
    }
    let mut any_truncated = false;
    for n in &parsed {
        let (record, terms) = match kind {
            Kind::Syr => {
                let s = sequences::syrgen(&n.to_odd().expect("validated odd"), budget);
                (SequenceRecord::from_syr(&s, true), s.terms)
            }
            Kind::Col => {
                let s = sequences::col_seq(n, budget);
                (SequenceRecord::from_col(&s, true), s.terms)
            }
        };
        any_truncated |= record.truncated;
        match format {
            Format::Text => {
                writeln!(out, "{}", join(&terms))?;
                match record.stopping_time {
                    Some(st) => writeln!(
                        out,
                        "stopping_time={st} max_term={} odd_steps={}",
                        record.max_term, record.odd_steps
                    )?,
                    None => writeln!(
                        out,
                        "undecided at budget {budget}: max_term={} odd_steps={}",
                        record.max_term, record.odd_steps
                    )?,
                }
            }
            Format::Json => {
                serde_json::to_writer(&mut *out, &record).map_err(io::Error::from)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let w = csv_out.as_mut().expect("csv writer");
                let mut row = vec![
                    record.seed.clone(),
                    record.kind.clone(),
                    record.stopping_time.map(|s| s.to_string()).unwrap_or_default(),
                    record.max_term.clone(),
                    record.odd_steps.to_string(),
                    record.truncated.to_string(),
                ];
                if with_terms {
                    row.push(join(&terms));
                }
                w.write_record(&row)?;
            }
            Format::Dot => unreachable!(),
        }
    }
    if let Some(w) = csv_out {
        out.write_all(&w.into_inner().map_err(|e| io::Error::other(e.to_string()))?)?;
    }
    Ok(if strict && any_truncated {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    })
}

#[derive(serde::Serialize)]
struct LocateReport {
    n: String,
    a: u32,
    p: u32,
    q: String,
    entry: String,
    residue: String,
    syr: String,
    trivial_cycle_anchor: bool,
}

pub fn cmd_locate(n: &str, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(usage("locate supports --format text or json"));
    }
    let n = parse_pos_odd(n)?;
    let c = locate(&n);
    let back = entry(&c);
    let report = LocateReport {
        n: n.to_string(),
        a: c.a.value(),
        p: c.p,
        q: c.q.to_string(),
        entry: back.to_string(),
        residue: residue6(&n).to_string(),
        syr: (&c.q * 6u32 + c.a.value()).to_string(),
        trivial_cycle_anchor: n.is_one(),
    };
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        _ => {
            write!(
                out,
                "n={} a={} p={} q={} entry={} residue={} syr={}",
                report.n, report.a, report.p, report.q, report.entry, report.residue, report.syr
            )?;
            if report.trivial_cycle_anchor {
                write!(out, " trivial-cycle anchor")?;
            }
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_tree(
    levels: u32,
    max_p: u32,
    max_value: Option<&str>,
    format: Format,
    black: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let export = match format {
        Format::Dot => ExportFormat::Dot,
        Format::Json => ExportFormat::Json,
        _ => return Err(usage("tree supports --format dot or json")),
    };
    let max_value = max_value
        .map(|v| parse_natural(v).map_err(|e| usage(e.to_string())))
        .transpose()?;
    let tree = build_tree_with(levels, max_p, max_value, black);
    tree.export(export, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(
    suites: &[Suite],
    cfg: &VerifyConfig,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let report = verify::run_suites(suites, cfg);
    match format {
        Format::Json => out.write_all(report.to_json().as_bytes())?,
        _ => out.write_all(report.to_text().as_bytes())?,
    }
    let failed = report
        .checks
        .iter()
        .any(|c| c.outcome == verify::Outcome::Fail);
    Ok(if failed {
        EXIT_FAIL
    } else if !report.passed {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    })
}

pub fn cmd_table(which: Which, rows: u64, max_x: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match which {
        Which::A => {
            w.write_record(["q", "8q+1", "8q+3", "8q+5", "8q+7", "S_1", "S_3", "S_5", "S_7"])?;
            for row in verify::table_a(rows) {
                let mut rec = vec![row.q.to_string()];
                rec.extend(row.n.iter().map(u64::to_string));
                rec.extend(row.s.iter().map(u64::to_string));
                w.write_record(&rec)?;
            }
        }
        Which::B => {
            w.write_record(["parent", "child", "x", "y", "m"])?;
            for cell in verify::table_b(max_x, rows) {
                w.write_record([
                    cell.parent.to_string(),
                    cell.child.to_string(),
                    cell.x.to_string(),
                    cell.y.to_string(),
                    cell.m.to_string(),
                ])?;
            }
        }
    }
    out.write_all(&w.into_inner().map_err(|e| io::Error::other(e.to_string()))?)?;
    Ok(EXIT_OK)
}
