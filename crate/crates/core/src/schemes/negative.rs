//! Schemes that create pair phases and later remove them.
//!
//! A qubit left on the bus while a same-row neighbour attaches and detaches
//! picks up a half phase with it and then loses it again. Allowing this lets
//! layers share more rows than the restricted schemes can.

use std::collections::BTreeSet;

use super::count::count;
use super::{SchemeError, SchemeId, Tape};
use crate::phase_algebra::{BusOp, OpSequence, Quadrature};
use crate::targets::GridSpec;

/// Width-3 layers on columns `(2k, 2k + 1, 2k + 2)` sharing their third column.
///
/// The last two rows of every layer keep the shared column on the bus, so the
/// next layer starts with two carried rows regardless of neighbours.
pub fn gen_negative_layered(spec: GridSpec) -> Result<OpSequence, SchemeError> {
    count(SchemeId::NegativeLayered, spec)?;
    let (n, m) = (spec.n, spec.m);
    let layers = (m - 2) / 2;
    let mut t = Tape::new(spec);
    let mut on: BTreeSet<(usize, usize)> = BTreeSet::new();
    for k in 0..=layers {
        let (x, y) = (2 * k, 2 * k + 1);
        let z = (k < layers).then_some(2 * k + 2);
        let rows: Vec<usize> = if k % 2 == 0 {
            (0..n).collect()
        } else {
            (0..n).rev().collect()
        };
        for (i, &r) in rows.iter().enumerate() {
            if on.insert((r, x)) {
                t.on(r, x);
            }
            t.on(r, y);
            if i > 0 && (i < n - 1 || z.is_none()) {
                let p = rows[i - 1];
                t.off(p, x);
                on.remove(&(p, x));
                if let Some(z) = z {
                    t.on(p, z);
                }
                t.off(p, y);
                if let Some(z) = z {
                    t.off(p, z);
                }
            }
        }
        let (p, l) = (rows[n - 2], rows[n - 1]);
        match z {
            Some(z) => {
                t.off(p, x);
                t.off(l, x);
                t.on(l, z);
                t.on(p, z);
                on.insert((l, z));
                on.insert((p, z));
                t.off(p, y);
                t.off(l, y);
            }
            None => {
                t.off(l, x);
                t.off(l, y);
            }
        }
        for r in 0..n {
            on.remove(&(r, x));
        }
    }
    Ok(t.into_sequence())
}

/// Width-4 blocks on columns `3i .. 3i + 3`, the fourth column shared with the
/// next block through two carried rows.
///
/// Each row step is `+A_r -A_p -C_pp +B_r +D_r +C_r -D_r -B_p` where `p` and
/// `pp` are the previous two rows: `C` stays on for two steps, so it crosses
/// `B` of its own row and of the next, and meets `B_p` and `A` of other rows
/// only by nesting. Two-row grids use a transposed ladder instead.
pub fn gen_negative_wide(spec: GridSpec) -> Result<OpSequence, SchemeError> {
    count(SchemeId::NegativeWide, spec)?;
    let (n, m) = (spec.n, spec.m);
    let mut t = Tape::new(spec);
    if n == 2 {
        for c in 0..m {
            t.on(0, c);
            if c > 0 {
                t.off(0, c - 1);
            }
            t.on(1, c);
            if c > 0 {
                t.off(1, c - 1);
            }
        }
        t.off(0, m - 1);
        t.off(1, m - 1);
        return Ok(t.into_sequence());
    }
    let blocks = (m - 2) / 3;
    for i in 0..=blocks {
        wide_block(&mut t, n, i, i == blocks);
    }
    Ok(t.into_sequence())
}

fn wide_block(t: &mut Tape, n: usize, i: usize, last: bool) {
    let (a, b, c, d) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
    let rows: Vec<usize> = if i.is_multiple_of(2) {
        (0..n).collect()
    } else {
        (0..n).rev().collect()
    };
    let carried = |r: usize| i > 0 && (r == rows[0] || r == rows[1]);
    let kept = |r: usize| !last && (r == rows[n - 1] || r == rows[n - 2]);
    for s in 0..n {
        let r = rows[s];
        let p = s.checked_sub(1).map(|k| rows[k]);
        let pp = s.checked_sub(2).map(|k| rows[k]);
        if !carried(r) {
            t.on(r, a);
        }
        if s == 2 && i > 0 && !last {
            t.off(rows[0], c);
            t.off(rows[1], a);
        } else {
            if let Some(p) = p {
                t.off(p, a);
            }
            if let (Some(pp), false) = (pp, last) {
                t.off(pp, c);
            }
        }
        t.on(r, b);
        if !last {
            let leaf = !kept(r);
            if leaf {
                t.on(r, d);
            }
            t.on(r, c);
            if leaf {
                t.off(r, d);
            }
        }
        if let Some(p) = p {
            t.off(p, b);
        }
    }
    let (q, l) = (rows[n - 2], rows[n - 1]);
    t.off(l, a);
    t.off(l, b);
    if !last {
        t.on(l, d);
        t.on(q, d);
        t.off(q, c);
        t.off(l, c);
    }
}

/// Closed 3x3 box in 18 ops with every qubit on the bus once.
///
/// The right column stays on for two row steps, so it briefly picks up a half
/// phase with the left qubit two rows down and with the middle qubit above it,
/// both of which are undone before the box closes.
pub fn negative_box3() -> OpSequence {
    let spec = GridSpec::new(3, 3).expect("3x3 grid");
    let mut t = Tape::new(spec);
    for r in 0..3 {
        t.on(r, 0);
        if r >= 1 {
            t.off(r - 1, 0);
        }
        if r >= 2 {
            t.off(r - 2, 2);
        }
        t.on(r, 1);
        t.on(r, 2);
        if r >= 1 {
            t.off(r - 1, 1);
        }
    }
    t.off(2, 0);
    t.off(2, 1);
    t.off(1, 2);
    t.off(2, 2);
    t.into_sequence()
}

/// Corner section of a layered negative construction on a 5x4 grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerFragment {
    pub spec: GridSpec,
    pub sequence: OpSequence,
    /// Qubit still on the bus when the fragment ends.
    pub open_qubit: usize,
}

/// Hand-written corner fragment, qubits labelled `1..=20` row-major.
///
/// The op `-x16` replaces a `-x` on qubit 15 that would leave both 15 and 16
/// displaced; with it only qubit 19 stays on the bus, waiting for the next
/// section.
pub fn corner_fragment() -> CornerFragment {
    use Quadrature::{Momentum as P, Position as X};
    const OPS: [(usize, Quadrature, i8); 43] = [
        (9, X, 1), (17, X, 1), (13, P, 1), (9, X, -1), (18, P, 1), (17, X, -1), (10, P, 1),
        (14, X, -1), (13, P, -1), (10, P, -1), (18, P, -1), (16, X, -1), (15, P, -1), (14, X, 1),
        (20, P, -1), (19, X, 1), (12, P, -1), (16, X, 1), (20, P, 1), (7, P, -1), (11, X, 1),
        (15, P, 1), (4, P, -1), (8, X, 1), (12, P, 1), (4, P, 1), (3, X, 1), (6, X, 1), (7, P, 1),
        (8, X, -1), (3, X, -1), (10, P, 1), (11, X, -1), (2, P, 1), (5, P, 1), (6, X, -1),
        (2, P, -1), (9, X, -1), (10, P, -1), (1, X, -1), (5, P, -1), (9, X, 1), (1, X, 1),
    ];
    let spec = GridSpec::new(5, 4).expect("5x4 grid");
    let ops = OPS.iter().map(|&(q, d, s)| BusOp::new(q - 1, d, s)).collect();
    CornerFragment {
        spec,
        sequence: OpSequence::new(spec.qubit_count(), ops).expect("labels fit the grid"),
        open_qubit: 18,
    }
}
