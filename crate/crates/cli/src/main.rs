//! `severi`: JSON front end to severi-core.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 internal invariant
//! violation or failed verification. Diagnostics go to stderr only.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use severi_core::corpus::{self, CorpusSpec, Dedup};
use severi_core::intnf::{hsnf, snf};
use severi_core::lattice2::Point;
use severi_core::par::Execution;
use severi_core::severi;
use severi_core::verify::{self, VerifyOptions};
use severi_core::{Error, IntMat, LatticePolygon};

#[derive(Parser, Debug)]
#[command(name = "severi", version, about = "Components of genus-one Severi varieties of lattice polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Compact JSON output (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for a polygon file.
    Analyze {
        file: PathBuf,
        /// Also count by direct lattice enumeration and require agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Number of irreducible components only.
    Count {
        file: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// One descriptor per intermediate lattice.
    Components { file: PathBuf },
    /// Smith normal form with certificates of a matrix file.
    Snf { file: PathBuf },
    /// Homogeneous Smith normal form of a matrix with zero row sums.
    Hsnf { file: PathBuf },
    /// All convex lattice polygons with vertices in {0..N}².
    Corpus {
        #[arg(long = "max-coord")]
        max_coord: i64,
        #[arg(long)]
        limit: Option<usize>,
        /// Write one file per polygon here instead of JSON lines on stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = DedupArg::Translation)]
        dedup: DedupArg,
    },
    /// Run every consistency check over the corpus.
    Verify {
        #[arg(long = "max-coord")]
        max_coord: i64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DedupArg {
    None,
    Translation,
}

impl From<DedupArg> for Dedup {
    fn from(d: DedupArg) -> Self {
        match d {
            DedupArg::None => Dedup::None,
            DedupArg::Translation => Dedup::Translation,
        }
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn is_bare_list(text: &str) -> bool {
    text.trim_start().starts_with('[')
}

fn parse<T: DeserializeOwned>(path: &Path, text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text)
        .map_err(|e| Failure::Input(format!("{}: not a {what}: {e}", path.display())))
}

/// `{"vertices": [[x, y], …]}` or a bare vertex list.
fn read_polygon(path: &Path) -> CliResult<LatticePolygon> {
    let text = read(path)?;
    if is_bare_list(&text) {
        let v: Vec<Point> = parse(path, &text, "vertex list")?;
        Ok(LatticePolygon::new(&v).map_err(Error::from)?)
    } else {
        parse(path, &text, "polygon")
    }
}

/// `{"rows", "cols", "entries"}` or a bare list of rows.
fn read_matrix(path: &Path) -> CliResult<IntMat> {
    let text = read(path)?;
    if is_bare_list(&text) {
        let rows: Vec<Vec<i128>> = parse(path, &text, "matrix")?;
        Ok(IntMat::from_rows(rows)?)
    } else {
        parse(path, &text, "matrix")
    }
}

struct Output {
    pretty: bool,
    out: io::StdoutLock<'static>,
}

impl Output {
    fn json<T: Serialize>(&mut self, value: &T) -> CliResult<()> {
        let text = if self.pretty {
            serde_json::to_string_pretty(value)
        } else {
            serde_json::to_string(value)
        }
        .map_err(|e| Failure::Internal(e.to_string()))?;
        self.line(&text)
    }

    fn line(&mut self, text: &str) -> CliResult<()> {
        writeln!(self.out, "{text}").map_err(|e| Failure::Input(format!("stdout: {e}")))
    }
}

fn checked_count(polygon: &LatticePolygon, oracle: bool) -> CliResult<usize> {
    let count = severi::count_components(polygon)?;
    if oracle {
        let direct = severi::count_components_oracle(polygon)?;
        if direct != count {
            return Err(Failure::Internal(format!(
                "formula counts {count} components, enumeration counts {direct}"
            )));
        }
    }
    Ok(count)
}

fn run(cli: Cli) -> CliResult<()> {
    let mut out = Output {
        pretty: cli.pretty,
        out: io::stdout().lock(),
    };
    match cli.command {
        Command::Analyze { file, oracle } => {
            let polygon = read_polygon(&file)?;
            checked_count(&polygon, oracle)?;
            out.json(&severi::analyze(&polygon)?)
        }
        Command::Count { file, oracle } => {
            let polygon = read_polygon(&file)?;
            let count = checked_count(&polygon, oracle)?;
            out.line(&count.to_string())
        }
        Command::Components { file } => {
            let polygon = read_polygon(&file)?;
            out.json(&severi::enumerate_components(&polygon)?)
        }
        Command::Snf { file } => out.json(&snf(&read_matrix(&file)?)?),
        Command::Hsnf { file } => out.json(&hsnf(&read_matrix(&file)?)?),
        Command::Corpus {
            max_coord,
            limit,
            out: dir,
            dedup,
        } => {
            let spec = CorpusSpec {
                max_coordinate: max_coord,
                dedup: dedup.into(),
                limit,
            };
            let polygons = corpus::enumerate(&spec)?;
            match dir {
                None => {
                    out.pretty = false;
                    for p in &polygons {
                        out.json(p)?;
                    }
                    Ok(())
                }
                Some(dir) => {
                    let io_err = |e: io::Error| Failure::Input(format!("{}: {e}", dir.display()));
                    fs::create_dir_all(&dir).map_err(io_err)?;
                    let width = polygons.len().to_string().len().max(4);
                    for (i, p) in polygons.iter().enumerate() {
                        let path = dir.join(format!("polygon_{i:0width$}.json"));
                        let text = serde_json::to_string(p).expect("polygons serialize");
                        fs::write(&path, text + "\n").map_err(io_err)?;
                        out.line(&path.display().to_string())?;
                    }
                    Ok(())
                }
            }
        }
        Command::Verify {
            max_coord,
            trials,
            seed,
            sequential,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                trials,
                seed,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
                inject_fault,
                ..VerifyOptions::new(max_coord)
            };
            let summary = verify::run(&opts)?;
            if cli.json || cli.pretty {
                out.json(&summary)?;
            } else {
                out.line(&summary.to_string())?;
            }
            if summary.all_passed() {
                Ok(())
            } else {
                Err(Failure::Internal(format!(
                    "{} check(s) failed",
                    summary.failures.len()
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            // help and version go to stdout, usage errors to stderr
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
