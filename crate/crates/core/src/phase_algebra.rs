//! Exact ledger semantics for sequences of conditional bus displacements.
//!
//! Amplitudes are Gaussian integers in units of `beta = sqrt(pi/8)` and all
//! phases are integers in units of `pi/8`.

use std::fmt;

use thiserror::Error;

/// Bus quadrature displaced by an operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrature {
    /// Real displacement `+-beta`.
    Position,
    /// Imaginary displacement `+-i beta`.
    Momentum,
}

impl Quadrature {
    /// The opposite quadrature.
    pub fn other(self) -> Self {
        match self {
            Quadrature::Position => Quadrature::Momentum,
            Quadrature::Momentum => Quadrature::Position,
        }
    }

    /// Single-letter tag used in files and listings.
    pub fn tag(self) -> char {
        match self {
            Quadrature::Position => 'x',
            Quadrature::Momentum => 'p',
        }
    }

    /// Parses `x` or `p`.
    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "x" => Some(Quadrature::Position),
            "p" => Some(Quadrature::Momentum),
            _ => None,
        }
    }
}

/// Gaussian-integer bus amplitude `re + i im` in units of beta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Amp {
    pub re: i64,
    pub im: i64,
}

impl Amp {
    pub const ZERO: Amp = Amp { re: 0, im: 0 };

    pub fn new(re: i64, im: i64) -> Self {
        Amp { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// `Im(self * conj(other))`, the phase picked up when `self` follows `other`.
    pub fn cross(self, other: Amp) -> i64 {
        self.im * other.re - self.re * other.im
    }
}

impl std::ops::Add for Amp {
    type Output = Amp;
    fn add(self, rhs: Amp) -> Amp {
        Amp::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl std::ops::AddAssign for Amp {
    fn add_assign(&mut self, rhs: Amp) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl std::ops::Neg for Amp {
    type Output = Amp;
    fn neg(self) -> Amp {
        Amp::new(-self.re, -self.im)
    }
}

impl fmt::Display for Amp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// One conditional displacement `D(s * u * beta * sigma_z(q))` with `u` in `{1, i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BusOp {
    pub qubit: usize,
    pub quad: Quadrature,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl BusOp {
    /// Builds an op; any nonnegative `sign` maps to `+1`, negative to `-1`.
    pub fn new(qubit: usize, quad: Quadrature, sign: i8) -> Self {
        BusOp {
            qubit,
            quad,
            sign: if sign < 0 { -1 } else { 1 },
        }
    }

    /// Amplitude added to the qubit's residual.
    pub fn amplitude(self) -> Amp {
        let s = i64::from(self.sign);
        match self.quad {
            Quadrature::Position => Amp::new(s, 0),
            Quadrature::Momentum => Amp::new(0, s),
        }
    }

    /// The same op with the sign flipped.
    pub fn inverse(self) -> Self {
        BusOp {
            sign: -self.sign,
            ..self
        }
    }
}

impl fmt::Display for BusOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { '-' } else { '+' };
        write!(f, "{}{}{}", s, self.quad.tag(), self.qubit)
    }
}

/// Errors from the phase algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("qubit {qubit} out of range for {count} qubits")]
    QubitOutOfRange { qubit: usize, count: usize },
    #[error("ledger sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// Ordered list of ops on a fixed qubit register; execution order is list order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpSequence {
    qubit_count: usize,
    ops: Vec<BusOp>,
}

impl OpSequence {
    pub fn new(qubit_count: usize, ops: Vec<BusOp>) -> Result<Self, AlgebraError> {
        if let Some(op) = ops.iter().find(|op| op.qubit >= qubit_count) {
            return Err(AlgebraError::QubitOutOfRange {
                qubit: op.qubit,
                count: qubit_count,
            });
        }
        Ok(OpSequence { qubit_count, ops })
    }

    pub fn empty(qubit_count: usize) -> Self {
        OpSequence {
            qubit_count,
            ops: Vec::new(),
        }
    }

    pub fn push(&mut self, op: BusOp) -> Result<(), AlgebraError> {
        if op.qubit >= self.qubit_count {
            return Err(AlgebraError::QubitOutOfRange {
                qubit: op.qubit,
                count: self.qubit_count,
            });
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn ops(&self) -> &[BusOp] {
        &self.ops
    }

    pub fn into_ops(self) -> Vec<BusOp> {
        self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    /// `self` followed by `other` on the larger of the two registers.
    pub fn then(&self, other: &OpSequence) -> OpSequence {
        let mut ops = self.ops.clone();
        ops.extend_from_slice(&other.ops);
        OpSequence {
            qubit_count: self.qubit_count.max(other.qubit_count),
            ops,
        }
    }

    /// Re-homes the sequence on a register of `qubit_count` qubits.
    pub fn with_qubit_count(self, qubit_count: usize) -> Result<Self, AlgebraError> {
        OpSequence::new(qubit_count, self.ops)
    }

    /// Number of ops touching each qubit.
    pub fn interaction_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.qubit_count];
        for op in &self.ops {
            counts[op.qubit] += 1;
        }
        counts
    }

    /// Flips every op on qubits where `flip[q]` is set.
    pub fn flip_qubits(&self, flip: &[bool]) -> OpSequence {
        let ops = self
            .ops
            .iter()
            .map(|&op| {
                if flip.get(op.qubit).copied().unwrap_or(false) {
                    op.inverse()
                } else {
                    op
                }
            })
            .collect();
        OpSequence {
            qubit_count: self.qubit_count,
            ops,
        }
    }
}

impl fmt::Display for OpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.ops.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

/// A pair-phase change recorded while accumulating with history enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseChange {
    /// Zero-based index of the op that caused the change.
    pub step: usize,
    pub a: usize,
    pub b: usize,
    /// Pair phase after the change.
    pub value: i64,
}

/// Accumulated bus state: residual amplitudes, pair phases and global phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BusLedger {
    qubit_count: usize,
    residual: Vec<Amp>,
    pair: Vec<i64>,
    global: i64,
    steps: usize,
    history: Option<Vec<PhaseChange>>,
}

impl BusLedger {
    /// Empty ledger for `qubit_count` qubits.
    pub fn new(qubit_count: usize) -> Self {
        BusLedger {
            qubit_count,
            residual: vec![Amp::ZERO; qubit_count],
            pair: vec![0; qubit_count * qubit_count],
            global: 0,
            steps: 0,
            history: None,
        }
    }

    /// Empty ledger that records every pair-phase change.
    pub fn with_history(qubit_count: usize) -> Self {
        BusLedger {
            history: Some(Vec::new()),
            ..BusLedger::new(qubit_count)
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    /// Number of ops applied so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn residual(&self, q: usize) -> Amp {
        self.residual[q]
    }

    pub fn residuals(&self) -> &[Amp] {
        &self.residual
    }

    /// Pair phase in units of `pi/8`; `None` on the diagonal.
    pub fn pair_phase(&self, a: usize, b: usize) -> Option<i64> {
        if a == b || a >= self.qubit_count || b >= self.qubit_count {
            None
        } else {
            Some(self.pair[a * self.qubit_count + b])
        }
    }

    /// Global phase in units of `pi/8`.
    pub fn global_phase(&self) -> i64 {
        self.global
    }

    /// Recorded pair-phase changes, if history is enabled.
    pub fn history(&self) -> Option<&[PhaseChange]> {
        self.history.as_deref()
    }

    /// Pairs `(a, b, phase)` with `a < b` and nonzero phase, in index order.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize, i64)> {
        let n = self.qubit_count;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let v = self.pair[a * n + b];
                if v != 0 {
                    out.push((a, b, v));
                }
            }
        }
        out
    }

    /// Qubits whose residual amplitude is nonzero.
    pub fn nonzero_residuals(&self) -> Vec<(usize, Amp)> {
        self.residual
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(q, &a)| (q, a))
            .collect()
    }

    /// Applies one op in place.
    pub fn apply(&mut self, op: BusOp) -> Result<(), AlgebraError> {
        let n = self.qubit_count;
        if op.qubit >= n {
            return Err(AlgebraError::QubitOutOfRange {
                qubit: op.qubit,
                count: n,
            });
        }
        let c = op.amplitude();
        let q = op.qubit;
        for j in 0..n {
            let a = self.residual[j];
            if a.is_zero() {
                continue;
            }
            let v = c.cross(a);
            if v == 0 {
                continue;
            }
            if j == q {
                self.global += v;
            } else {
                self.pair[q * n + j] += v;
                self.pair[j * n + q] += v;
                if let Some(h) = self.history.as_mut() {
                    h.push(PhaseChange {
                        step: self.steps,
                        a: q.min(j),
                        b: q.max(j),
                        value: self.pair[q * n + j],
                    });
                }
            }
        }
        self.residual[q] += c;
        self.steps += 1;
        Ok(())
    }
}

/// Value-style single step: returns the ledger after `op`.
pub fn compose_step(mut ledger: BusLedger, op: BusOp) -> Result<BusLedger, AlgebraError> {
    ledger.apply(op)?;
    Ok(ledger)
}

/// Folds a whole sequence into a fresh ledger.
pub fn accumulate(seq: &OpSequence) -> BusLedger {
    let mut ledger = BusLedger::new(seq.qubit_count());
    for &op in seq.ops() {
        ledger.apply(op).expect("sequence ops are range-checked");
    }
    ledger
}

/// Like [`accumulate`] but records every pair-phase change.
pub fn accumulate_with_history(seq: &OpSequence) -> BusLedger {
    let mut ledger = BusLedger::with_history(seq.qubit_count());
    for &op in seq.ops() {
        ledger.apply(op).expect("sequence ops are range-checked");
    }
    ledger
}

/// Reverses the order and flips every sign.
pub fn invert(seq: &OpSequence) -> OpSequence {
    OpSequence {
        qubit_count: seq.qubit_count(),
        ops: seq.ops().iter().rev().map(|op| op.inverse()).collect(),
    }
}

/// Compares residuals and pair phases, and the global phase unless ignored.
pub fn ledger_equal(a: &BusLedger, b: &BusLedger, ignore_global: bool) -> Result<bool, AlgebraError> {
    if a.qubit_count != b.qubit_count {
        return Err(AlgebraError::SizeMismatch(a.qubit_count, b.qubit_count));
    }
    Ok(a.residual == b.residual && a.pair == b.pair && (ignore_global || a.global == b.global))
}

/// Standard short sequences, zero-based qubits, in execution order.
pub mod standard {
    use super::{BusOp, OpSequence, Quadrature::*};

    fn seq(n: usize, ops: &[(usize, super::Quadrature, i8)]) -> OpSequence {
        let ops = ops.iter().map(|&(q, d, s)| BusOp::new(q, d, s)).collect();
        OpSequence::new(n, ops).expect("static sequence")
    }

    /// Two-qubit conditional phase: pair phase `+2`.
    pub fn u_cp() -> OpSequence {
        seq(2, &[(0, Position, -1), (1, Momentum, -1), (0, Position, 1), (1, Momentum, 1)])
    }

    /// Two-qubit entangler with the second position op negated so the bus closes.
    pub fn u_12() -> OpSequence {
        seq(2, &[(1, Momentum, 1), (0, Position, -1), (1, Momentum, -1), (0, Position, 1)])
    }

    /// Nested attach/detach: no phase.
    pub fn u_0() -> OpSequence {
        seq(2, &[(0, Position, -1), (1, Momentum, 1), (1, Momentum, -1), (0, Position, 1)])
    }

    /// Star on qubit 0 with leaves 1 and 2, built from two full `u_cp` blocks.
    pub fn u_f() -> OpSequence {
        seq(
            3,
            &[
                (2, Momentum, 1),
                (0, Position, -1),
                (2, Momentum, -1),
                (0, Position, 1),
                (1, Momentum, 1),
                (0, Position, -1),
                (1, Momentum, -1),
                (0, Position, 1),
            ],
        )
    }

    /// Fused star on qubit 0 with leaves 1 and 2 in six ops.
    pub fn u_r() -> OpSequence {
        seq(
            3,
            &[
                (2, Momentum, 1),
                (1, Momentum, 1),
                (0, Position, -1),
                (2, Momentum, -1),
                (1, Momentum, -1),
                (0, Position, 1),
            ],
        )
    }

    /// Edge between qubits 0 and 2 while qubit 1 rides along with no phase.
    pub fn u_13() -> OpSequence {
        seq(
            3,
            &[
                (1, Position, -1),
                (2, Momentum, 1),
                (0, Position, -1),
                (2, Momentum, -1),
                (1, Position, 1),
                (0, Position, 1),
            ],
        )
    }
}
