//! JSON file formats: sequences, graphs and verification reports.

use std::collections::BTreeMap;

use qubus::verify::{CrossValidation, Discrepancy};
use qubus::{BusOp, OpSequence, Quadrature, TargetGraph, VerifyReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const BETA_UNITS: &str = "sqrt(pi/8)";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OpRecord {
    pub q: usize,
    pub quad: String,
    pub s: i8,
}

/// Op list in execution order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub qubits: usize,
    pub beta_units: String,
    pub ops: Vec<OpRecord>,
}

impl SequenceFile {
    pub fn from_sequence(seq: &OpSequence) -> Self {
        SequenceFile {
            qubits: seq.qubit_count(),
            beta_units: BETA_UNITS.to_string(),
            ops: seq
                .ops()
                .iter()
                .map(|o| OpRecord {
                    q: o.qubit,
                    quad: o.quad.tag().to_string(),
                    s: o.sign,
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<OpSequence, String> {
        let file: SequenceFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if file.beta_units != BETA_UNITS {
            return Err(format!("beta_units must be {BETA_UNITS:?}, got {:?}", file.beta_units));
        }
        let mut ops = Vec::with_capacity(file.ops.len());
        for (i, r) in file.ops.iter().enumerate() {
            let quad = Quadrature::from_tag(&r.quad)
                .ok_or_else(|| format!("op {i}: quad must be \"x\" or \"p\", got {:?}", r.quad))?;
            if r.s != 1 && r.s != -1 {
                return Err(format!("op {i}: s must be 1 or -1, got {}", r.s));
            }
            ops.push(BusOp::new(r.q, quad, r.s));
        }
        OpSequence::new(file.qubits, ops).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("sequence files always serialize");
        s.push('\n');
        s
    }
}

/// Explicit target graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub qubits: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<TargetGraph, String> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        TargetGraph::new(file.qubits, file.edges).map_err(|e| e.to_string())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize)]
pub struct Inputs {
    pub sequence_sha256: String,
    pub graph: String,
    pub graph_sha256: String,
    pub mode: String,
}

#[derive(Debug, Serialize)]
pub struct EdgeFailureRecord {
    pub a: usize,
    pub b: usize,
    pub phase: i64,
    pub is_edge: bool,
}

#[derive(Debug, Serialize)]
pub struct ResidualRecord {
    pub qubit: usize,
    pub x: i64,
    pub p: i64,
}

#[derive(Debug, Serialize)]
pub struct EventRecord {
    pub a: usize,
    pub b: usize,
    pub created_step: usize,
    pub destroyed_step: usize,
    pub peak: i64,
    pub final_phase: i64,
}

#[derive(Debug, Serialize)]
pub struct DwellRecord {
    pub qubit: usize,
    pub attach_step: usize,
    pub release_step: usize,
    pub longest_stay: usize,
}

#[derive(Debug, Serialize)]
pub struct SignRecord {
    pub a: usize,
    pub b: usize,
    pub sign: i8,
}

#[derive(Debug, Serialize)]
pub struct ReportBody {
    pub passed: bool,
    pub mode: String,
    pub op_count: usize,
    pub qubit_count: usize,
    pub edge_failures: Vec<EdgeFailureRecord>,
    pub residual_failures: Vec<ResidualRecord>,
    pub mixed_quadrature: Vec<usize>,
    pub interaction_counts: Vec<usize>,
    pub create_destroy_events: Vec<EventRecord>,
    pub dwell: Vec<DwellRecord>,
    pub dynamic: bool,
    pub realized_signs: Vec<SignRecord>,
    pub global_phase: i64,
}

impl From<&VerifyReport> for ReportBody {
    fn from(r: &VerifyReport) -> Self {
        ReportBody {
            passed: r.passed,
            mode: r.mode.name().to_string(),
            op_count: r.op_count,
            qubit_count: r.qubit_count,
            edge_failures: r
                .edge_failures
                .iter()
                .map(|e| EdgeFailureRecord { a: e.a, b: e.b, phase: e.phase, is_edge: e.is_edge })
                .collect(),
            residual_failures: r
                .residual_failures
                .iter()
                .map(|f| ResidualRecord { qubit: f.qubit, x: f.residual.re, p: f.residual.im })
                .collect(),
            mixed_quadrature: r.mixed_quadrature.clone(),
            interaction_counts: r.interaction_counts.clone(),
            create_destroy_events: r
                .create_destroy_events
                .iter()
                .map(|e| EventRecord {
                    a: e.a,
                    b: e.b,
                    created_step: e.created_step,
                    destroyed_step: e.destroyed_step,
                    peak: e.peak,
                    final_phase: e.final_phase,
                })
                .collect(),
            dwell: dwell_records(&r.dwell),
            dynamic: r.dynamic,
            realized_signs: r
                .realized_signs
                .iter()
                .map(|(&(a, b), &sign)| SignRecord { a, b, sign })
                .collect(),
            global_phase: r.global_phase,
        }
    }
}

fn dwell_records(d: &BTreeMap<usize, qubus::verify::Dwell>) -> Vec<DwellRecord> {
    d.iter()
        .map(|(&qubit, w)| DwellRecord {
            qubit,
            attach_step: w.attach_step,
            release_step: w.release_step,
            longest_stay: w.longest_stay,
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct OracleSection {
    pub requested: bool,
    pub limit: usize,
    pub ledger_only: bool,
    pub passed: Option<bool>,
    pub discrepancies: Vec<String>,
}

impl OracleSection {
    pub fn skipped(limit: usize) -> Self {
        OracleSection {
            requested: false,
            limit,
            ledger_only: true,
            passed: None,
            discrepancies: Vec::new(),
        }
    }

    pub fn from_cross(cv: &CrossValidation, limit: usize) -> Self {
        OracleSection {
            requested: true,
            limit,
            ledger_only: cv.ledger_only,
            passed: (!cv.ledger_only).then_some(cv.passed),
            discrepancies: cv.discrepancies.iter().map(Discrepancy::to_string).collect(),
        }
    }
}

/// Verification report plus tool version and input hashes.
#[derive(Debug, Serialize)]
pub struct ReportFile {
    pub tool: &'static str,
    pub version: &'static str,
    pub inputs: Inputs,
    pub report: ReportBody,
    pub oracle: OracleSection,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}
