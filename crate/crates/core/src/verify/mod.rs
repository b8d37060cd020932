//! Independent checking of sequences against target graphs.
//!
//! [`verify_target`] works on the exact ledger. [`oracle_phase_function`]
//! replays every op per basis state, and [`walsh_check`] plus
//! [`mixed_difference_check`] decide graph-state equivalence from that table.

mod oracle;
mod walsh;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::phase_algebra::{accumulate_with_history, Amp, OpSequence, Quadrature};
use crate::targets::TargetGraph;

pub use oracle::{oracle_phase_function, PhaseFunction, DEFAULT_ORACLE_LIMIT};
pub use walsh::{mixed_difference_check, walsh_check, walsh_decompose, WalshSpectrum};

/// Errors raised by verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("sequence has {seq} qubits but the graph needs {graph}")]
    QubitCountMismatch { seq: usize, graph: usize },
    #[error("{qubits} qubits exceed the oracle limit of {limit}")]
    OracleLimit { qubits: usize, limit: usize },
    #[error("bus not returned to the origin for basis state {bits}")]
    ResidualDisplacement { bits: String },
    #[error("phase table has {len} entries, expected a power of two")]
    TableSize { len: usize },
}

/// How pair phases are judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyMode {
    /// Edges exactly `+-2` units, non-edges exactly `0`.
    Strict,
    /// Edges `2 mod 4` units, non-edges `0 mod 4`.
    Modular,
}

impl VerifyMode {
    /// Whether pair phase `phase` is acceptable for an edge or non-edge.
    pub fn accepts(self, phase: i64, is_edge: bool) -> bool {
        match (self, is_edge) {
            (VerifyMode::Strict, true) => phase.abs() == 2,
            (VerifyMode::Strict, false) => phase == 0,
            (VerifyMode::Modular, true) => phase.rem_euclid(4) == 2,
            (VerifyMode::Modular, false) => phase.rem_euclid(4) == 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::Strict => "strict",
            VerifyMode::Modular => "modular",
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for VerifyMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(VerifyMode::Strict),
            "modular" => Ok(VerifyMode::Modular),
            other => Err(format!("unknown mode {other:?}, expected strict or modular")),
        }
    }
}

/// A pair whose final phase is wrong for the mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeFailure {
    pub a: usize,
    pub b: usize,
    pub phase: i64,
    pub is_edge: bool,
}

/// A qubit still displacing the bus at the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualFailure {
    pub qubit: usize,
    pub residual: Amp,
}

/// A pair phase that reached a peak magnitude and later dropped below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CreateDestroyEvent {
    pub a: usize,
    pub b: usize,
    /// Op index at which the peak magnitude was first reached.
    pub created_step: usize,
    /// Op index of the first drop below the peak.
    pub destroyed_step: usize,
    pub peak: i64,
    pub final_phase: i64,
}

/// First attach and last release of a qubit, plus its longest continuous bus stay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dwell {
    pub attach_step: usize,
    pub release_step: usize,
    /// Longest run of ops during which the qubit's residual stayed nonzero.
    pub longest_stay: usize,
}

/// Result of [`verify_target`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub mode: VerifyMode,
    pub op_count: usize,
    pub qubit_count: usize,
    pub edge_failures: Vec<EdgeFailure>,
    pub residual_failures: Vec<ResidualFailure>,
    /// Qubits driven on both quadratures; reported, not a failure.
    pub mixed_quadrature: Vec<usize>,
    pub interaction_counts: Vec<usize>,
    pub create_destroy_events: Vec<CreateDestroyEvent>,
    pub dwell: BTreeMap<usize, Dwell>,
    /// No qubit stays on the bus for more than half of the sequence.
    pub dynamic: bool,
    /// `+1` for edge phases `2 mod 8`, `-1` for `6 mod 8`.
    pub realized_signs: BTreeMap<(usize, usize), i8>,
    pub global_phase: i64,
}

impl VerifyReport {
    /// One-line failure summary.
    pub fn summary(&self) -> String {
        if self.passed {
            return format!("passed ({} ops, {} mode)", self.op_count, self.mode);
        }
        let mut parts = Vec::new();
        if !self.residual_failures.is_empty() {
            let qs: Vec<String> = self
                .residual_failures
                .iter()
                .map(|r| format!("q{}={}", r.qubit, r.residual))
                .collect();
            parts.push(format!("residual on {}", qs.join(", ")));
        }
        if !self.edge_failures.is_empty() {
            let es: Vec<String> = self
                .edge_failures
                .iter()
                .take(8)
                .map(|e| {
                    format!(
                        "({},{})={}{}",
                        e.a,
                        e.b,
                        e.phase,
                        if e.is_edge { "" } else { " non-edge" }
                    )
                })
                .collect();
            let more = self.edge_failures.len().saturating_sub(8);
            let tail = if more > 0 { format!(" and {more} more") } else { String::new() };
            parts.push(format!("bad pair phases {}{}", es.join(", "), tail));
        }
        format!("failed: {}", parts.join("; "))
    }
}

/// Realized sign of an edge phase in the `2 mod 4` class.
pub fn edge_sign(phase: i64) -> Option<i8> {
    match phase.rem_euclid(8) {
        2 => Some(1),
        6 => Some(-1),
        _ => None,
    }
}

/// Checks residuals and pair phases against `graph` and fills the metrics.
pub fn verify_target(
    seq: &OpSequence,
    graph: &TargetGraph,
    mode: VerifyMode,
) -> Result<VerifyReport, VerifyError> {
    let n = seq.qubit_count();
    if n < graph.qubit_count() {
        return Err(VerifyError::QubitCountMismatch {
            seq: n,
            graph: graph.qubit_count(),
        });
    }
    let ledger = accumulate_with_history(seq);

    let residual_failures: Vec<ResidualFailure> = ledger
        .nonzero_residuals()
        .into_iter()
        .map(|(qubit, residual)| ResidualFailure { qubit, residual })
        .collect();

    let mut edge_failures = Vec::new();
    let mut realized_signs = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            let phase = ledger.pair_phase(a, b).expect("off-diagonal pair");
            let is_edge = graph.has_edge(a, b);
            if !mode.accepts(phase, is_edge) {
                edge_failures.push(EdgeFailure { a, b, phase, is_edge });
            }
            if is_edge {
                if let Some(s) = edge_sign(phase) {
                    realized_signs.insert((a, b), s);
                }
            }
        }
    }

    let mut seen: Vec<[bool; 2]> = vec![[false; 2]; n];
    for op in seq.ops() {
        let i = match op.quad {
            Quadrature::Position => 0,
            Quadrature::Momentum => 1,
        };
        seen[op.qubit][i] = true;
    }
    let mixed_quadrature = (0..n).filter(|&q| seen[q][0] && seen[q][1]).collect();

    let create_destroy_events = detect_create_destroy(&ledger);
    let dwell = dwell_profile(seq);
    let dynamic = dwell.values().all(|d| 2 * d.longest_stay <= seq.len());

    let passed = residual_failures.is_empty() && edge_failures.is_empty();
    Ok(VerifyReport {
        passed,
        mode,
        op_count: seq.len(),
        qubit_count: n,
        edge_failures,
        residual_failures,
        mixed_quadrature,
        interaction_counts: seq.interaction_counts(),
        create_destroy_events,
        dwell,
        dynamic,
        realized_signs,
        global_phase: ledger.global_phase(),
    })
}

/// Pairs whose phase magnitude fell below an earlier peak, one event per pair.
pub fn detect_create_destroy(ledger: &crate::phase_algebra::BusLedger) -> Vec<CreateDestroyEvent> {
    let Some(history) = ledger.history() else {
        return Vec::new();
    };
    let mut peak: BTreeMap<(usize, usize), (i64, usize)> = BTreeMap::new();
    let mut flagged: BTreeMap<(usize, usize), CreateDestroyEvent> = BTreeMap::new();
    for ch in history {
        let key = (ch.a, ch.b);
        let mag = ch.value.abs();
        let entry = peak.entry(key).or_insert((0, ch.step));
        if mag > entry.0 {
            *entry = (mag, ch.step);
        } else if mag < entry.0 && !flagged.contains_key(&key) {
            flagged.insert(
                key,
                CreateDestroyEvent {
                    a: ch.a,
                    b: ch.b,
                    created_step: entry.1,
                    destroyed_step: ch.step,
                    peak: entry.0,
                    final_phase: ledger.pair_phase(ch.a, ch.b).expect("off-diagonal pair"),
                },
            );
        }
    }
    let mut events: Vec<CreateDestroyEvent> = flagged.into_values().collect();
    events.sort_by_key(|e| (e.destroyed_step, e.a, e.b));
    events
}

/// Per-qubit bus occupancy.
pub fn dwell_profile(seq: &OpSequence) -> BTreeMap<usize, Dwell> {
    let mut residual = vec![Amp::ZERO; seq.qubit_count()];
    let mut since: Vec<Option<usize>> = vec![None; seq.qubit_count()];
    let mut out: BTreeMap<usize, Dwell> = BTreeMap::new();
    for (step, op) in seq.ops().iter().enumerate() {
        let q = op.qubit;
        let d = out.entry(q).or_insert(Dwell {
            attach_step: step,
            release_step: step,
            longest_stay: 0,
        });
        d.release_step = step;
        if residual[q].is_zero() {
            since[q] = Some(step);
        }
        residual[q] += op.amplitude();
        if residual[q].is_zero() {
            if let Some(s) = since[q].take() {
                d.longest_stay = d.longest_stay.max(step - s + 1);
            }
        }
    }
    for (q, s) in since.iter().enumerate() {
        if let (Some(s), Some(d)) = (s, out.get_mut(&q)) {
            d.longest_stay = d.longest_stay.max(seq.len() - s);
        }
    }
    out
}

/// A disagreement found by [`cross_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discrepancy {
    /// The ledger check failed.
    Ledger(String),
    /// The oracle could not produce a phase table.
    Oracle(String),
    /// Ledger pair phase differs from the oracle's weight-2 coefficient.
    Pair { a: usize, b: usize, ledger: i64, oracle: i64 },
    Global { ledger: i64, oracle: i64 },
    /// Nonzero single-qubit coefficient; ZZ phases never produce one.
    Linear { qubit: usize, coefficient: i64 },
    /// Walsh weight above two or a non-integral coefficient.
    HigherWeight { mask: u64 },
    WalshRejected,
    MixedDifferenceRejected,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::Ledger(s) => write!(f, "ledger check {s}"),
            Discrepancy::Oracle(s) => write!(f, "oracle: {s}"),
            Discrepancy::Pair { a, b, ledger, oracle } => {
                write!(f, "pair ({a},{b}): ledger {ledger}, oracle {oracle}")
            }
            Discrepancy::Global { ledger, oracle } => {
                write!(f, "global phase: ledger {ledger}, oracle {oracle}")
            }
            Discrepancy::Linear { qubit, coefficient } => {
                write!(f, "linear term on q{qubit}: {coefficient}")
            }
            Discrepancy::HigherWeight { mask } => write!(f, "unexpected Walsh character {mask:#x}"),
            Discrepancy::WalshRejected => f.write_str("Walsh classes rejected"),
            Discrepancy::MixedDifferenceRejected => f.write_str("mixed differences rejected"),
        }
    }
}

/// Outcome of comparing the ledger with the basis-state oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub passed: bool,
    /// The oracle was skipped because the register exceeds the limit.
    pub ledger_only: bool,
    pub report: VerifyReport,
    pub discrepancies: Vec<Discrepancy>,
}

/// Runs the ledger check, the oracle, Walsh and mixed-difference checks, and
/// compares ledger pair phases with the oracle coefficients.
pub fn cross_validate(
    seq: &OpSequence,
    graph: &TargetGraph,
    mode: VerifyMode,
    oracle_limit: usize,
) -> Result<CrossValidation, VerifyError> {
    let report = verify_target(seq, graph, mode)?;
    let mut discrepancies = Vec::new();
    if !report.passed {
        discrepancies.push(Discrepancy::Ledger(report.summary()));
    }
    if seq.qubit_count() > oracle_limit {
        return Ok(CrossValidation {
            passed: report.passed,
            ledger_only: true,
            report,
            discrepancies,
        });
    }
    let f = match oracle_phase_function(seq, oracle_limit) {
        Ok(f) => f,
        Err(e) => {
            discrepancies.push(Discrepancy::Oracle(e.to_string()));
            return Ok(CrossValidation {
                passed: false,
                ledger_only: false,
                report,
                discrepancies,
            });
        }
    };
    let spectrum = walsh_decompose(&f)?;
    for &mask in &spectrum.higher_weight {
        discrepancies.push(Discrepancy::HigherWeight { mask });
    }
    for (q, &c) in spectrum.linear.iter().enumerate() {
        if c != 0 {
            discrepancies.push(Discrepancy::Linear { qubit: q, coefficient: c });
        }
    }
    let ledger = crate::phase_algebra::accumulate(seq);
    if ledger.global_phase() != spectrum.global {
        discrepancies.push(Discrepancy::Global {
            ledger: ledger.global_phase(),
            oracle: spectrum.global,
        });
    }
    let n = seq.qubit_count();
    for a in 0..n {
        for b in a + 1..n {
            let l = ledger.pair_phase(a, b).expect("off-diagonal pair");
            let o = spectrum.pair(a, b);
            if l != o {
                discrepancies.push(Discrepancy::Pair { a, b, ledger: l, oracle: o });
            }
        }
    }
    if !walsh_check(&f, graph, mode)? {
        discrepancies.push(Discrepancy::WalshRejected);
    }
    if !mixed_difference_check(&f, graph, mode)? {
        discrepancies.push(Discrepancy::MixedDifferenceRejected);
    }
    Ok(CrossValidation {
        passed: discrepancies.is_empty(),
        ledger_only: false,
        report,
        discrepancies,
    })
}
