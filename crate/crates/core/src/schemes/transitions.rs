//! Savings between consecutive layers and the schedules built from them.

use super::SchemeError;

/// A change of layer width, with or without a hanging edge to absorb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransitionSpec {
    pub from_width: u8,
    pub to_width: u8,
    pub hanging_edge_available: bool,
}

/// Ops saved by a transition and whether it leaves a hanging edge behind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Savings {
    pub saving: u8,
    pub generates_hanging_edge: bool,
}

/// One row of the savings table; `available: None` means the row ignores it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SavingsRow {
    pub from_width: u8,
    pub to_width: u8,
    pub available: Option<bool>,
    pub saving: u8,
    pub generates_hanging_edge: bool,
}

/// The six admissible transitions.
pub const SAVINGS_TABLE: [SavingsRow; 6] = [
    SavingsRow { from_width: 2, to_width: 3, available: None, saving: 4, generates_hanging_edge: false },
    SavingsRow { from_width: 3, to_width: 3, available: Some(false), saving: 2, generates_hanging_edge: true },
    SavingsRow { from_width: 3, to_width: 3, available: Some(true), saving: 4, generates_hanging_edge: false },
    SavingsRow { from_width: 2, to_width: 4, available: None, saving: 2, generates_hanging_edge: true },
    SavingsRow { from_width: 4, to_width: 2, available: Some(false), saving: 2, generates_hanging_edge: true },
    SavingsRow { from_width: 4, to_width: 2, available: Some(true), saving: 4, generates_hanging_edge: false },
];

/// Looks a transition up in [`SAVINGS_TABLE`].
pub fn transition_savings(t: TransitionSpec) -> Result<Savings, SchemeError> {
    SAVINGS_TABLE
        .iter()
        .find(|r| {
            r.from_width == t.from_width
                && r.to_width == t.to_width
                && r.available.is_none_or(|a| a == t.hanging_edge_available)
        })
        .map(|r| Savings {
            saving: r.saving,
            generates_hanging_edge: r.generates_hanging_edge,
        })
        .ok_or(SchemeError::UnknownTransition {
            from: t.from_width,
            to: t.to_width,
        })
}

/// A transition placed in a schedule together with its looked-up savings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduledTransition {
    pub spec: TransitionSpec,
    pub savings: Savings,
}

/// Walks a width pattern, deriving hanging-edge availability as it goes.
///
/// A hanging edge left by transition `j` can be used by transition `j + 2`,
/// the next one touching the same ladder side. The first layer can host one
/// for the second transition; the first transition never has one.
fn schedule(widths: impl Fn(usize) -> (u8, u8), transitions: usize) -> Vec<ScheduledTransition> {
    let mut out: Vec<ScheduledTransition> = Vec::with_capacity(transitions);
    for j in 0..transitions {
        let available = match j {
            0 => false,
            1 => true,
            _ => out[j - 2].savings.generates_hanging_edge,
        };
        let (from_width, to_width) = widths(j);
        let spec = TransitionSpec {
            from_width,
            to_width,
            hanging_edge_available: available,
        };
        let savings = transition_savings(spec).expect("schedules use table rows only");
        out.push(ScheduledTransition { spec, savings });
    }
    out
}

/// All transitions `3 -> 3`; savings run `2, 4, 4, 2` repeating.
pub fn hanging_schedule(transitions: usize) -> Vec<ScheduledTransition> {
    schedule(|_| (3, 3), transitions)
}

/// Transitions alternate `2 -> 4` and `4 -> 2`; savings run `2, 4, 2, 2` repeating.
pub fn alternating_schedule(transitions: usize) -> Vec<ScheduledTransition> {
    schedule(|j| if j % 2 == 0 { (2, 4) } else { (4, 2) }, transitions)
}
