//! Sequence generators for every scheme, their closed-form counts and the
//! layer-transition savings table.
//!
//! Generators work on a [`Tape`] of attach/detach events. An attach is a `+1`
//! displacement on the qubit's checkerboard quadrature and a detach is `-1`.
//! Every sequence returned by [`generate`] has been checked against its grid.

mod basic;
mod count;
mod ladder;
mod negative;
mod restricted;
mod transitions;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::phase_algebra::{accumulate, BusOp, OpSequence};
use crate::targets::{grid_graph, GridSpec, TargetError, TargetGraph};
use crate::verify::{edge_sign, verify_target, VerifyMode};

pub use basic::{
    gen_box4, gen_chains, gen_cphase, gen_fused_star, gen_naive, gen_open_layer4,
    open_layer4_graph, staircase,
};
pub use count::{count, CountModel};
pub use ladder::{gen_layered, LeafSide};
pub use negative::{corner_fragment, gen_negative_layered, gen_negative_wide, negative_box3, CornerFragment};
pub use restricted::{gen_restricted_single_pass, restricted_single_pass};
pub use transitions::{
    alternating_schedule, hanging_schedule, transition_savings, ScheduledTransition, Savings,
    SavingsRow, TransitionSpec, SAVINGS_TABLE,
};

/// The generation schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    Naive,
    Chains,
    Stitch41,
    Alt24,
    Pure33,
    Hanging33,
    LayeredMin,
    NegativeLayered,
    NegativeWide,
}

impl SchemeId {
    pub const ALL: [SchemeId; 9] = [
        SchemeId::Naive,
        SchemeId::Chains,
        SchemeId::Stitch41,
        SchemeId::Alt24,
        SchemeId::Pure33,
        SchemeId::Hanging33,
        SchemeId::LayeredMin,
        SchemeId::NegativeLayered,
        SchemeId::NegativeWide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Naive => "naive",
            SchemeId::Chains => "chains",
            SchemeId::Stitch41 => "stitch_4_1",
            SchemeId::Alt24 => "alt_2_4",
            SchemeId::Pure33 => "pure_3_3",
            SchemeId::Hanging33 => "hanging_3_3",
            SchemeId::LayeredMin => "layered_min",
            SchemeId::NegativeLayered => "negative_layered",
            SchemeId::NegativeWide => "negative_wide",
        }
    }

    /// Whether the scheme avoids creating and later destroying pair phases.
    pub fn is_restricted(self) -> bool {
        !matches!(self, SchemeId::NegativeLayered | SchemeId::NegativeWide)
    }

    pub fn model(self) -> CountModel {
        CountModel::of(self)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = SchemeError;
    fn from_str(s: &str) -> Result<Self, SchemeError> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| SchemeError::UnknownScheme(s.to_string()))
    }
}

/// Errors raised by generators and count models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("{scheme} needs {predicate}; got n={n}, m={m}")]
    Divisibility {
        scheme: SchemeId,
        n: usize,
        m: usize,
        predicate: &'static str,
    },
    #[error("qubits {0} and {1} share a quadrature and cannot be entangled")]
    SameQuadrature(usize, usize),
    #[error("leaf {leaf} has the same quadrature as center {center}")]
    ColorViolation { center: usize, leaf: usize },
    #[error("qubit {0} is out of range for the coloring")]
    QubitOutOfRange(usize),
    #[error("layer needs at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("no single-pass restricted sequence exists for this {qubits}-qubit target")]
    RestrictedInfeasible { qubits: usize },
    #[error("restricted search gave up after {0} states")]
    SearchLimit(usize),
    #[error("invalid carry pattern: {0}")]
    InvalidCarries(String),
    #[error("transition {from}->{to} is not in the savings table")]
    UnknownTransition { from: u8, to: u8 },
    #[error("{scheme} failed its self-check: {detail}")]
    SelfCheck { scheme: SchemeId, detail: String },
    #[error(transparent)]
    Target(#[from] TargetError),
}

/// Attach/detach event list over a grid.
#[derive(Debug, Clone)]
pub(crate) struct Tape {
    grid: GridSpec,
    events: Vec<(usize, bool)>,
}

impl Tape {
    pub(crate) fn new(grid: GridSpec) -> Self {
        Tape {
            grid,
            events: Vec::new(),
        }
    }

    pub(crate) fn on(&mut self, r: usize, c: usize) {
        self.events.push((self.grid.index(r, c), true));
    }

    pub(crate) fn off(&mut self, r: usize, c: usize) {
        self.events.push((self.grid.index(r, c), false));
    }

    pub(crate) fn on_q(&mut self, q: usize) {
        self.events.push((q, true));
    }

    pub(crate) fn off_q(&mut self, q: usize) {
        self.events.push((q, false));
    }

    pub(crate) fn into_sequence(self) -> OpSequence {
        let g = self.grid;
        let ops = self
            .events
            .into_iter()
            .map(|(q, attach)| BusOp::new(q, g.quadrature(q), if attach { 1 } else { -1 }))
            .collect();
        OpSequence::new(g.qubit_count(), ops).expect("tape indices lie on the grid")
    }
}

/// Edge signs after per-qubit flips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignReport {
    pub sequence: OpSequence,
    /// Realized sign of every edge whose phase is in the entangling class.
    pub signs: BTreeMap<(usize, usize), i8>,
    /// Every edge realized with sign `+1`.
    pub all_positive: bool,
}

/// Flips whole qubits to make as many edges as possible `+pi/4`.
///
/// Flipping every op of a qubit negates all of its pair phases, so the best
/// flip set is a parity labelling over the graph. When the realized signs do
/// not admit one, the breadth-first labelling is kept and the remaining
/// negative edges are reported.
pub fn normalize_signs(seq: &OpSequence, graph: &TargetGraph) -> SignReport {
    let ledger = accumulate(seq);
    let n = seq.qubit_count();
    let sign_of = |a: usize, b: usize| ledger.pair_phase(a, b).and_then(edge_sign);
    let adj = graph.adjacency();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for root in 0..graph.qubit_count() {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let fu = flip[u].expect("queued qubits are labelled");
            for &v in &adj[u] {
                if flip[v].is_none() {
                    let negative = sign_of(u, v) == Some(-1);
                    flip[v] = Some(fu ^ negative);
                    queue.push_back(v);
                }
            }
        }
    }
    let flip: Vec<bool> = flip.into_iter().map(|f| f.unwrap_or(false)).collect();
    let sequence = seq.flip_qubits(&flip);
    let ledger = accumulate(&sequence);
    let signs: BTreeMap<(usize, usize), i8> = graph
        .edges()
        .filter_map(|(a, b)| {
            ledger
                .pair_phase(a, b)
                .and_then(edge_sign)
                .map(|s| ((a, b), s))
        })
        .collect();
    let all_positive = signs.len() == graph.edge_count() && signs.values().all(|&s| s == 1);
    SignReport {
        sequence,
        signs,
        all_positive,
    }
}

fn build(scheme: SchemeId, spec: GridSpec) -> Result<OpSequence, SchemeError> {
    match scheme {
        SchemeId::Naive => Ok(gen_naive(spec)),
        SchemeId::Chains => Ok(gen_chains(spec)),
        SchemeId::Stitch41
        | SchemeId::Alt24
        | SchemeId::Pure33
        | SchemeId::Hanging33
        | SchemeId::LayeredMin => gen_layered(spec, scheme),
        SchemeId::NegativeLayered => gen_negative_layered(spec),
        SchemeId::NegativeWide => gen_negative_wide(spec),
    }
}

/// Builds, sign-normalizes and checks the sequence for `scheme` on `spec`.
///
/// The result always has exactly [`count`] ops and passes [`verify_target`]
/// against the grid in modular mode; restricted schemes are also checked for
/// the absence of create-destroy events.
pub fn generate(scheme: SchemeId, spec: GridSpec) -> Result<OpSequence, SchemeError> {
    let expected = count(scheme, spec)?;
    let raw = build(scheme, spec)?;
    let graph = grid_graph(spec);
    let seq = normalize_signs(&raw, &graph).sequence;
    let fail = |detail: String| SchemeError::SelfCheck { scheme, detail };
    if seq.len() as u64 != expected {
        return Err(fail(format!("{} ops, count model {}", seq.len(), expected)));
    }
    let report = verify_target(&seq, &graph, VerifyMode::Modular)
        .map_err(|e| fail(e.to_string()))?;
    if !report.passed {
        return Err(fail(report.summary()));
    }
    if scheme.is_restricted() && !report.create_destroy_events.is_empty() {
        return Err(fail(format!(
            "{} create-destroy events",
            report.create_destroy_events.len()
        )));
    }
    Ok(seq)
}
