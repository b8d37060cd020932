//! `qubus`: generate, verify, count and compare cluster-state bus sequences.
//!
//! Exit codes: 0 pass, 1 verification failure or I/O error, 2 failed
//! precondition, 3 parse error.

mod files;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qubus::verify::DEFAULT_ORACLE_LIMIT;
use qubus::{
    count, cross_validate, generate, grid_graph, verify_target, GridSpec, OpSequence, SchemeError,
    SchemeId, TargetGraph, VerifyMode,
};

use files::{sha256_hex, GraphFile, Inputs, OracleSection, ReportBody, ReportFile, SequenceFile};

const ORACLE_ENV: &str = "QUBUS_ORACLE_MAX_QUBITS";

/// Schemes whose counts must be non-increasing in this order.
const HIERARCHY: [SchemeId; 6] = [
    SchemeId::Naive,
    SchemeId::Chains,
    SchemeId::LayeredMin,
    SchemeId::Hanging33,
    SchemeId::NegativeLayered,
    SchemeId::NegativeWide,
];

#[derive(Parser)]
#[command(name = "qubus", version, about = "Cluster-state sequences for a shared bus mode")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the sequence for a scheme on an n x m grid.
    Generate {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a sequence against a target graph.
    Verify {
        #[arg(long)]
        seq: PathBuf,
        /// `grid:n:m` or a JSON graph file.
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "modular")]
        mode: String,
        /// Also enumerate basis states and compare with the ledger.
        #[arg(long)]
        oracle: bool,
        /// Report path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the op count of a scheme, or of every scheme with --table.
    Count {
        #[arg(long, required_unless_present = "table")]
        scheme: Option<String>,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        table: bool,
    },
    /// Print the schemes in count order with ratios to the naive count.
    Compare {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Failed(String),
    Io(String),
    Precondition(String),
    Parse(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) | CliError::Io(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Parse(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Failed(m) | CliError::Io(m) | CliError::Precondition(m) | CliError::Parse(m) => m,
        }
    }
}

impl From<SchemeError> for CliError {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::UnknownScheme(_) => CliError::Parse(e.to_string()),
            SchemeError::SelfCheck { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { scheme, rows, cols, out } => cmd_generate(&scheme, rows, cols, out.as_deref()),
        Command::Verify { seq, graph, mode, oracle, out } => cmd_verify(&seq, &graph, &mode, oracle, out.as_deref()),
        Command::Count { scheme, rows, cols, table } => cmd_count(scheme.as_deref(), rows, cols, table),
        Command::Compare { rows, cols } => cmd_compare(rows, cols),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn grid(rows: usize, cols: usize) -> Result<GridSpec, CliError> {
    GridSpec::new(rows, cols).map_err(|e| CliError::Precondition(e.to_string()))
}

fn scheme(name: &str) -> Result<SchemeId, CliError> {
    name.parse::<SchemeId>().map_err(|e| {
        let known: Vec<&str> = SchemeId::ALL.iter().map(|s| s.name()).collect();
        CliError::Parse(format!("{e}; known schemes: {}", known.join(", ")))
    })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn cmd_generate(name: &str, rows: usize, cols: usize, out: Option<&Path>) -> Result<(), CliError> {
    let id = scheme(name)?;
    let spec = grid(rows, cols)?;
    let expected = count(id, spec)?;
    let seq = generate(id, spec)?;
    write_output(out, &SequenceFile::from_sequence(&seq).to_json())?;
    eprintln!(
        "{id} {rows}x{cols}: {} ops; {} = {expected}",
        seq.len(),
        id.model().formula
    );
    Ok(())
}

fn oracle_limit() -> Result<usize, CliError> {
    match std::env::var(ORACLE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{ORACLE_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

fn load_graph(spec: &str) -> Result<(TargetGraph, String), CliError> {
    if let Some(rest) = spec.strip_prefix("grid:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let dims: Result<Vec<usize>, _> = parts.iter().map(|p| p.parse::<usize>()).collect();
        match dims.as_deref() {
            Ok([n, m]) => {
                let g = grid(*n, *m)?;
                Ok((grid_graph(g), sha256_hex(spec.as_bytes())))
            }
            _ => Err(CliError::Parse(format!("graph {spec:?} is not of the form grid:n:m"))),
        }
    } else {
        let text = read(Path::new(spec))?;
        let g = GraphFile::parse(&text).map_err(|e| CliError::Parse(format!("{spec}: {e}")))?;
        Ok((g, sha256_hex(text.as_bytes())))
    }
}

fn cmd_verify(seq_path: &Path, graph_spec: &str, mode: &str, oracle: bool, out: Option<&Path>) -> Result<(), CliError> {
    let mode: VerifyMode = mode.parse().map_err(CliError::Parse)?;
    let text = read(seq_path)?;
    let seq: OpSequence = SequenceFile::parse(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", seq_path.display())))?;
    let (graph, graph_sha256) = load_graph(graph_spec)?;
    let limit = oracle_limit()?;
    let precondition = |e: qubus::VerifyError| CliError::Precondition(e.to_string());
    let (report, oracle_section, passed) = if oracle {
        if seq.qubit_count() > limit {
            eprintln!(
                "warning: {} qubits exceed the oracle limit of {limit}; ledger-only verification",
                seq.qubit_count()
            );
        }
        let cv = cross_validate(&seq, &graph, mode, limit).map_err(precondition)?;
        let section = OracleSection::from_cross(&cv, limit);
        (cv.report.clone(), section, cv.passed)
    } else {
        let r = verify_target(&seq, &graph, mode).map_err(precondition)?;
        let passed = r.passed;
        (r, OracleSection::skipped(limit), passed)
    };
    let file = ReportFile {
        tool: "qubus",
        version: env!("CARGO_PKG_VERSION"),
        inputs: Inputs {
            sequence_sha256: sha256_hex(text.as_bytes()),
            graph: graph_spec.to_string(),
            graph_sha256,
            mode: mode.name().to_string(),
        },
        report: ReportBody::from(&report),
        oracle: oracle_section,
    };
    write_output(out, &file.to_json())?;
    if passed {
        Ok(())
    } else {
        let mut msg = format!("verification failed: {}", report.summary());
        for d in &file.oracle.discrepancies {
            let _ = write!(msg, "\n  {d}");
        }
        Err(CliError::Failed(msg))
    }
}

fn cmd_count(name: Option<&str>, rows: usize, cols: usize, table: bool) -> Result<(), CliError> {
    let spec = grid(rows, cols)?;
    if !table {
        let id = scheme(name.expect("clap requires --scheme without --table"))?;
        println!("{}", count(id, spec)?);
        return Ok(());
    }
    if let Some(n) = name {
        scheme(n)?;
    }
    print!("{}", count_table(spec));
    Ok(())
}

fn count_table(spec: GridSpec) -> String {
    let naive = count(SchemeId::Naive, spec).expect("naive applies to every grid") as f64;
    let mut s = format!("{:<18}{:>8}{:>10}  formula\n", "scheme", "ops", "saving");
    for id in SchemeId::ALL {
        let model = id.model();
        match count(id, spec) {
            Ok(c) => {
                let _ = writeln!(s, "{:<18}{:>8}{:>10.3}  {}", id.name(), c, naive / c as f64, model.formula);
            }
            Err(_) => {
                let _ = writeln!(s, "{:<18}{:>8}{:>10}  skipped: needs {}", id.name(), "-", "-", model.divisibility);
            }
        }
    }
    s
}

fn cmd_compare(rows: usize, cols: usize) -> Result<(), CliError> {
    let spec = grid(rows, cols)?;
    let naive = count(SchemeId::Naive, spec)?;
    let mut applicable: Vec<(SchemeId, u64)> = Vec::new();
    let mut skipped = Vec::new();
    for id in SchemeId::ALL {
        match count(id, spec) {
            Ok(c) => applicable.push((id, c)),
            Err(_) => skipped.push(id),
        }
    }
    applicable.sort_by_key(|&(id, c)| (std::cmp::Reverse(c), id));
    println!("{rows}x{cols} grid, most to fewest ops:");
    for &(id, c) in &applicable {
        println!("  {:<18}{:>8}  naive ratio {:.3}", id.name(), c, naive as f64 / c as f64);
    }
    for id in &skipped {
        println!("  skipped {}: needs {}", id.name(), id.model().divisibility);
    }
    let chain: Vec<(SchemeId, u64)> = HIERARCHY
        .iter()
        .filter_map(|&id| applicable.iter().find(|e| e.0 == id).copied())
        .collect();
    let mut inversions: Vec<String> = chain
        .windows(2)
        .filter(|w| w[0].1 < w[1].1)
        .map(|w| format!("{} ({}) < {} ({})", w[0].0, w[0].1, w[1].0, w[1].1))
        .collect();
    inversions.extend(
        applicable
            .iter()
            .filter(|e| e.1 > naive)
            .map(|e| format!("{} ({}) > naive ({naive})", e.0, e.1)),
    );
    let names: Vec<&str> = chain.iter().map(|e| e.0.name()).collect();
    if inversions.is_empty() {
        println!("hierarchy holds: {}", names.join(" >= "));
        Ok(())
    } else {
        Err(CliError::Failed(format!("internal error, hierarchy inverted: {}", inversions.join("; "))))
    }
}
