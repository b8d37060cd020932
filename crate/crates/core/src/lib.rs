//! Compiler and verifier for conditional-displacement sequences that build
//! cluster states through a shared bus mode.
//!
//! Every op displaces the bus by `+-beta` or `+-i beta` conditioned on one
//! qubit's `sigma_z`, with `beta = sqrt(pi/8)`. Closed sequences act on the
//! qubits as products of `exp(i k pi/8 Z_a Z_b)`, so all bookkeeping is exact
//! integer arithmetic in units of `pi/8`.

pub mod phase_algebra;
pub mod schemes;
pub mod targets;
pub mod verify;

pub use phase_algebra::{
    accumulate, accumulate_with_history, compose_step, invert, ledger_equal, AlgebraError, Amp,
    BusLedger, BusOp, OpSequence, PhaseChange, Quadrature,
};
pub use schemes::{count, generate, CountModel, SchemeError, SchemeId};
pub use targets::{
    checkerboard_coloring, grid_graph, local_corrections, Coloring, GridSpec, LocalCorrection,
    TargetError, TargetGraph,
};
pub use verify::{
    cross_validate, oracle_phase_function, verify_target, walsh_check, CrossValidation,
    PhaseFunction, VerifyError, VerifyMode, VerifyReport,
};
