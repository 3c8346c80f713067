//! The `glasspath` command line: argument definitions and command bodies.
//!
//! Commands render into an [`Outcome`] instead of printing, so tests can run
//! them in-process.

pub mod svg;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use glasspath_core::backend::CountBackend;
use glasspath_core::error::Error;
use glasspath_core::genfun::build_d1;
use glasspath_core::glass3::{b3_closed, build_matrix, exists3, render_diagonals};
use glasspath_core::recursion::{a_closed_with, a_last_closed};
use glasspath_core::words::{
    dp_n, enumerate_words, enumerate_words_with_vector, oracle_a, oracle_a_last, oracle_b,
    AlternatingWord, ReflectionVector, Semantics,
};

pub use svg::render_svg;

/// Largest word list `words` will print.
pub const WORD_GUARD: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "glasspath",
    version,
    about = "Count reflection paths through stacked glass plates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    A,
    B,
    #[value(name = "a_last")]
    ALast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Tsv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of paths with a given reflection vector.
    Count {
        /// Comma-separated counts, e.g. 2,1,1.
        vector: ReflectionVector,
        #[arg(long, default_value = "dp")]
        backend: CountBackend,
        /// Count with every backend that accepts the vector and compare.
        #[arg(long, conflicts_with = "backend")]
        all_backends: bool,
    },
    /// Per-length statistics for rows m = 1..=M_MAX.
    Table {
        n: usize,
        m_max: usize,
        #[arg(value_enum)]
        stat: Stat,
        #[arg(long, default_value = "path")]
        semantics: Semantics,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Three-plate count matrix for a fixed count N at plate 1.
    Matrix {
        n: u32,
        extent: usize,
        #[arg(long, default_value = "dp")]
        backend: CountBackend,
        /// Append every nonzero diagonal with its difference triangle.
        #[arg(long)]
        diagonals: bool,
    },
    /// Generating function of paths on N plates and its series up to BOUND.
    Gf { n: usize, bound: u64 },
    /// Whether a three-plate vector is realized by some path.
    Exists { a1: u64, a2: u64, a3: u64 },
    /// List words of length M on N plates, or the words of one vector.
    Words {
        #[arg(required_unless_present = "vector", requires = "m")]
        n: Option<usize>,
        m: Option<usize>,
        #[arg(long, conflicts_with_all = ["n", "m"])]
        vector: Option<ReflectionVector>,
        #[arg(long, default_value = "path")]
        semantics: Semantics,
        /// Also draw one of the listed words.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Position of the word to draw, from 0.
        #[arg(long, requires = "svg", default_value_t = 0)]
        index: usize,
    },
}

/// What a command printed and the exit code it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Incompatible(String),
    Guard(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Incompatible(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Incompatible(msg) | CliError::Guard(msg) => {
                f.write_str(msg)
            }
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BackendIncompatible { .. } => CliError::Incompatible(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult = Result<Outcome, CliError>;

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Count {
            vector,
            backend,
            all_backends,
        } => cmd_count(&vector, backend, all_backends),
        Command::Table {
            n,
            m_max,
            stat,
            semantics,
            format,
        } => cmd_table(n, m_max, stat, semantics, format),
        Command::Matrix {
            n,
            extent,
            backend,
            diagonals,
        } => cmd_matrix(n, extent, backend, diagonals),
        Command::Gf { n, bound } => cmd_gf(n, bound),
        Command::Exists { a1, a2, a3 } => Ok(cmd_exists(a1, a2, a3)),
        Command::Words {
            n,
            m,
            vector,
            semantics,
            svg,
            index,
        } => {
            let source = match (vector, n, m) {
                (Some(v), _, _) => WordSource::Vector(v),
                (None, Some(n), Some(m)) => WordSource::Length { n, m },
                _ => return Err(CliError::Usage("give N M or --vector".into())),
            };
            cmd_words(&source, semantics, svg.map(|p| (p, index)))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> CliResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(cli)
}

pub fn cmd_count(v: &ReflectionVector, backend: CountBackend, all_backends: bool) -> CliResult {
    if !all_backends {
        return Ok(Outcome::ok(format!("{}\n", backend.count(v)?)));
    }
    let mut out = String::new();
    let mut values: Vec<BigUint> = Vec::new();
    for b in CountBackend::ALL {
        if b.incompatibility(v).is_some() {
            continue;
        }
        let c = b.count(v)?;
        let _ = writeln!(out, "{b}\t{c}");
        values.push(c);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    out.push_str(if agree { "MATCH\n" } else { "MISMATCH\n" });
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct StatRecord {
    stat: &'static str,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    value: String,
}

fn stat_a(n: usize, m: usize, semantics: Semantics) -> Result<BigUint, Error> {
    if n >= 2 {
        a_closed_with(n, m, semantics)
    } else {
        Ok(oracle_a(n, m, semantics))
    }
}

fn stat_b(n: usize, m: usize, semantics: Semantics) -> BigUint {
    let paths = if n == 3 {
        b3_closed(m as u64)
    } else {
        oracle_b(n, m)
    };
    // The lone word "1" adds the vector e_1.
    match semantics {
        Semantics::Word if m == 1 && n >= 1 => paths + 1u32,
        _ => paths,
    }
}

fn stat_a_last(n: usize, m: usize, j: usize, semantics: Semantics) -> Result<BigUint, Error> {
    if semantics == Semantics::Path && m == 1 && j == 1 {
        return Ok(BigUint::default());
    }
    if n >= 2 {
        a_last_closed(n, m, j)
    } else {
        oracle_a_last(n, m, j)
    }
}

pub fn cmd_table(
    n: usize,
    m_max: usize,
    stat: Stat,
    semantics: Semantics,
    format: OutputFormat,
) -> CliResult {
    if n == 0 || m_max == 0 {
        return Err(CliError::Usage("table needs N >= 1 and M_MAX >= 1".into()));
    }
    let mut header = vec!["m".to_string()];
    let mut rows = Vec::with_capacity(m_max);
    let mut records = Vec::new();
    match stat {
        Stat::A | Stat::B => header.push(if stat == Stat::A { "a" } else { "b" }.into()),
        Stat::ALast => header.extend((1..=n).map(|j| format!("j={j}"))),
    }
    for m in 1..=m_max {
        let mut row = vec![m.to_string()];
        match stat {
            Stat::A | Stat::B => {
                let (name, value) = if stat == Stat::A {
                    ("a", stat_a(n, m, semantics)?)
                } else {
                    ("b", stat_b(n, m, semantics))
                };
                row.push(value.to_string());
                records.push(StatRecord {
                    stat: name,
                    n,
                    m,
                    j: None,
                    value: value.to_string(),
                });
            }
            Stat::ALast => {
                for j in 1..=n {
                    let value = stat_a_last(n, m, j, semantics)?;
                    row.push(value.to_string());
                    records.push(StatRecord {
                        stat: "a_last",
                        n,
                        m,
                        j: Some(j),
                        value: value.to_string(),
                    });
                }
            }
        }
        rows.push(row);
    }
    let text = match format {
        OutputFormat::Table => aligned(&header, &rows),
        OutputFormat::Tsv => std::iter::once(&header)
            .chain(&rows)
            .map(|r| r.join("\t") + "\n")
            .collect(),
        OutputFormat::Jsonl => records
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain record") + "\n")
            .collect(),
    };
    Ok(Outcome::ok(text))
}

/// Right-aligned columns separated by two spaces.
fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

pub fn cmd_matrix(n: u32, extent: usize, backend: CountBackend, diagonals: bool) -> CliResult {
    let matrix = build_matrix(n, extent, backend)?;
    let mut out = matrix.to_tsv();
    if diagonals {
        out.push('\n');
        out.push_str(&render_diagonals(&matrix));
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct CoeffRecord {
    v: Vec<u32>,
    coeff: String,
}

pub fn cmd_gf(n: usize, bound: u64) -> CliResult {
    if !(2..=6).contains(&n) {
        return Err(CliError::Usage(format!("gf needs 2 <= N <= 6, got {n}")));
    }
    let gf = build_d1(n)?;
    let series = gf.series(bound)?;
    let mut out = format!("{gf}\n");
    for (mono, c) in series.nonzero() {
        let record = CoeffRecord {
            v: mono.exponents().to_vec(),
            coeff: c.to_string(),
        };
        out.push_str(&serde_json::to_string(&record).expect("plain record"));
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

/// `FEASIBLE <witness>` with code 0, or `INFEASIBLE <condition>` with code 1.
/// The zero vector prints a bare `FEASIBLE` since its witness is empty.
pub fn cmd_exists(a1: u64, a2: u64, a3: u64) -> Outcome {
    let f = exists3(a1, a2, a3);
    match (f.witness, f.violation) {
        (Some(w), _) if w.is_empty() => Outcome::ok("FEASIBLE\n".into()),
        (Some(w), _) => Outcome::ok(format!("FEASIBLE {w}\n")),
        (None, violation) => Outcome {
            stdout: format!("INFEASIBLE {}\n", violation.unwrap_or_default()),
            code: 1,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSource {
    Length { n: usize, m: usize },
    Vector(ReflectionVector),
}

impl WordSource {
    fn plates(&self) -> usize {
        match self {
            WordSource::Length { n, .. } => *n,
            WordSource::Vector(v) => v.n(),
        }
    }

    /// Upper bound on the number of words listed.
    fn size(&self, semantics: Semantics) -> Result<BigUint, Error> {
        match self {
            WordSource::Length { n, m } if *n >= 2 && *m >= 1 => a_closed_with(*n, *m, semantics),
            WordSource::Length { .. } => Ok(BigUint::from(1u32)),
            WordSource::Vector(v) => Ok(dp_n(v) + 1u32),
        }
    }

    fn words(&self, semantics: Semantics) -> Box<dyn Iterator<Item = AlternatingWord>> {
        match self {
            WordSource::Length { n, m } => Box::new(enumerate_words(*n, *m, semantics)),
            WordSource::Vector(v) => Box::new(enumerate_words_with_vector(v, semantics)),
        }
    }
}

pub fn cmd_words(
    source: &WordSource,
    semantics: Semantics,
    svg: Option<(PathBuf, usize)>,
) -> CliResult {
    let size = source.size(semantics)?;
    if size > BigUint::from(WORD_GUARD) {
        return Err(CliError::Guard(format!(
            "{size} words exceed the limit of {WORD_GUARD}"
        )));
    }
    let n = source.plates();
    let words: Vec<AlternatingWord> = source.words(semantics).collect();
    let mut out = String::new();
    for w in &words {
        out.push_str(&w.render(n));
        out.push('\n');
    }
    if let Some((path, index)) = svg {
        let word = words.get(index).ok_or_else(|| {
            CliError::Usage(format!("no word at index {index} ({} listed)", words.len()))
        })?;
        std::fs::write(path, render_svg(word, n)?)?;
    }
    Ok(Outcome::ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut full = vec!["glasspath"];
        full.extend_from_slice(args);
        let out = run_args(full).unwrap();
        assert_eq!(out.code, 0);
        out.stdout
    }

    fn run_err(args: &[&str]) -> i32 {
        let mut full = vec!["glasspath"];
        full.extend_from_slice(args);
        run_args(full).unwrap_err().exit_code()
    }

    #[test]
    fn count_examples() {
        assert_eq!(run_ok(&["count", "2,1,1"]), "2\n");
        assert_eq!(run_ok(&["count", "7,5,7", "--backend", "closed3"]), "840\n");
        assert_eq!(run_ok(&["count", "0,0,0,0"]), "1\n");
        let all = run_ok(&["count", "2,1,1", "--all-backends"]);
        assert_eq!(all.lines().count(), 6);
        assert!(all.ends_with("MATCH\n"));
        assert!(!all.contains("MISMATCH"));
    }

    #[test]
    fn count_errors() {
        assert_eq!(run_err(&["count", "2,x,1"]), 2);
        assert_eq!(run_err(&["count", "1,1,1,1", "--backend", "closed3"]), 3);
        assert_eq!(run_err(&["count", "1,1", "--backend", "fast"]), 2);
    }

    #[test]
    fn table_examples() {
        let a = run_ok(&[
            "table",
            "3",
            "4",
            "a",
            "--semantics",
            "path",
            "--format",
            "tsv",
        ]);
        assert_eq!(a.lines().last().unwrap(), "4\t8");

        let b = run_ok(&["table", "3", "16", "b", "--format", "tsv"]);
        let rows: Vec<&str> = b.lines().collect();
        assert_eq!(rows[4], "4\t6");
        assert_eq!(rows[5], "5\t7");

        let last = run_ok(&["table", "3", "4", "a_last", "--format", "tsv"]);
        assert_eq!(last.lines().next().unwrap(), "m\tj=1\tj=2\tj=3");
        assert_eq!(last.lines().last().unwrap(), "4\t5\t3\t0");

        let aligned = run_ok(&["table", "3", "4", "a_last"]);
        assert_eq!(aligned.lines().last().unwrap(), "4    5    3    0");

        let json = run_ok(&["table", "3", "2", "a", "--format", "jsonl"]);
        assert_eq!(
            json,
            "{\"stat\":\"a\",\"n\":3,\"m\":1,\"value\":\"2\"}\n{\"stat\":\"a\",\"n\":3,\"m\":2,\"value\":\"3\"}\n"
        );
    }

    #[test]
    fn table_semantics() {
        let word = run_ok(&[
            "table",
            "3",
            "1",
            "a",
            "--semantics",
            "word",
            "--format",
            "tsv",
        ]);
        assert_eq!(word, "m\ta\n1\t3\n");
        let b = run_ok(&[
            "table",
            "4",
            "1",
            "b",
            "--semantics",
            "word",
            "--format",
            "tsv",
        ]);
        assert_eq!(b, "m\tb\n1\t4\n");
        let one = run_ok(&["table", "1", "3", "a", "--format", "tsv"]);
        assert_eq!(one, "m\ta\n1\t0\n2\t0\n3\t0\n");
        assert_eq!(run_err(&["table", "0", "3", "a"]), 2);
        assert_eq!(run_err(&["table", "3", "3", "c"]), 2);
    }

    #[test]
    fn matrix_examples() {
        let m0 = run_ok(&["matrix", "0", "4"]);
        assert!(m0.starts_with("1\t"));
        let dp = run_ok(&["matrix", "3", "8"]);
        assert_eq!(dp, run_ok(&["matrix", "3", "8", "--backend", "closed3"]));
        assert_eq!(dp, run_ok(&["matrix", "3", "8", "--backend", "gf"]));
        assert_eq!(run_err(&["matrix", "3", "0"]), 2);
    }

    #[test]
    fn gf_examples() {
        let out = run_ok(&["gf", "3", "0"]);
        assert_eq!(
            out,
            "(1+t2+t3-t2^2*t3)/(1-t1*t2-t1*t3-t2*t3+t1*t2^2*t3)\n{\"v\":[0,0,0],\"coeff\":\"1\"}\n"
        );
        let out = run_ok(&["gf", "2", "5"]);
        let records: Vec<&str> = out.lines().skip(1).collect();
        assert_eq!(
            records,
            [
                "{\"v\":[0,0],\"coeff\":\"1\"}",
                "{\"v\":[0,1],\"coeff\":\"1\"}",
                "{\"v\":[1,1],\"coeff\":\"1\"}",
                "{\"v\":[1,2],\"coeff\":\"1\"}",
                "{\"v\":[2,2],\"coeff\":\"1\"}",
                "{\"v\":[2,3],\"coeff\":\"1\"}",
            ]
        );
        assert_eq!(run_err(&["gf", "7", "2"]), 2);
        assert_eq!(run_err(&["gf", "1", "2"]), 2);
    }

    #[test]
    fn exists_examples() {
        assert_eq!(run_ok(&["exists", "2", "1", "1"]), "FEASIBLE 2131\n");
        assert_eq!(run_ok(&["exists", "1", "2", "0"]), "FEASIBLE 212\n");
        assert_eq!(run_ok(&["exists", "0", "0", "0"]), "FEASIBLE\n");
        let out = run_args(["glasspath", "exists", "2", "0", "0"]).unwrap();
        assert_eq!(
            out,
            Outcome {
                stdout: "INFEASIBLE triangle\n".into(),
                code: 1
            }
        );
        assert_eq!(run_err(&["exists", "2", "-1", "0"]), 2);
    }

    #[test]
    fn words_examples() {
        assert_eq!(run_ok(&["words", "--vector", "2,1,1"]), "2131\n3121\n");
        assert_eq!(run_ok(&["words", "3", "4"]).lines().count(), 8);
        assert_eq!(run_ok(&["words", "--vector", "1,0,0"]), "");
        assert_eq!(
            run_ok(&["words", "3", "1", "--semantics", "word"]),
            "1\n2\n3\n"
        );
        assert_eq!(run_err(&["words", "12", "14"]), 4);
        assert_eq!(run_err(&["words", "3"]), 2);
        assert_eq!(run_err(&["words"]), 2);
    }

    #[test]
    fn words_wide_alphabet() {
        let out = run_ok(&["words", "10", "1"]);
        assert_eq!(out.lines().next(), Some("2"));
        assert_eq!(out.lines().last(), Some("10"));
        let out = run_ok(&["words", "10", "2"]);
        assert_eq!(out.lines().next(), Some("2.1"));
    }
}
