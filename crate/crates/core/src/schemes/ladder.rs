//! Ladder sweeps and the layered schemes built from them.
//!
//! A ladder covers two adjacent columns `P` (left) and `R` (right) and sweeps
//! the rows in one direction. Row `r` produces the rung `P_r - R_r` and the
//! verticals to row `r - 1` by interleaving attach and detach events so every
//! wanted pair crosses and no unwanted pair of opposite quadratures overlaps.
//!
//! Neighbouring ladders are joined either by leaves (a qubit of the column
//! between them wrapped around one `P` detach or one `R` attach) or by
//! carrying up to two `R` qubits of the last rows straight into the next
//! ladder, where they act as the left column. Each carried row saves two ops.

use super::count::count;
use super::transitions::{alternating_schedule, hanging_schedule};
use super::{SchemeError, SchemeId, Tape};
use crate::phase_algebra::OpSequence;
use crate::targets::GridSpec;

/// Which ladder hosts the leaf for a row of the column between two ladders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafSide {
    /// Second interval of the left ladder's `R` qubit during the right ladder.
    Left,
    /// Interval of the right ladder's `P`-side neighbour during the left ladder.
    Right,
}

/// One ladder sweep.
#[derive(Debug, Clone)]
pub(crate) struct Ladder {
    pub p: usize,
    pub r: usize,
    /// Column wrapped around `P` detaches, if any.
    pub w: Option<usize>,
    /// Column wrapped around `R` attaches, if any.
    pub z: Option<usize>,
    pub down: bool,
    /// Rows of `w` already on the bus when the sweep starts (first rows of the sweep).
    pub carry_in: usize,
    /// Rows of `R` left on the bus for the next ladder (last rows of the sweep).
    pub carry_out: usize,
    pub left_leaf: Vec<bool>,
    pub right_leaf: Vec<bool>,
}

struct Sweep<'a> {
    t: &'a mut Tape,
    l: &'a Ladder,
    carried: Vec<bool>,
    kept: Vec<bool>,
}

impl Sweep<'_> {
    fn has_w(&self, row: usize) -> Option<usize> {
        self.l.w.filter(|_| !self.carried[row] && self.l.left_leaf[row])
    }

    fn has_z(&self, row: usize) -> Option<usize> {
        self.l.z.filter(|_| !self.kept[row] && self.l.right_leaf[row])
    }

    fn close_p(&mut self, row: usize) {
        match self.has_w(row) {
            Some(w) => {
                self.t.on(row, w);
                self.t.off(row, self.l.p);
                self.t.off(row, w);
            }
            None => self.t.off(row, self.l.p),
        }
    }

    fn open_r(&mut self, row: usize) {
        match self.has_z(row) {
            Some(z) => {
                self.t.on(row, z);
                self.t.on(row, self.l.r);
                self.t.off(row, z);
            }
            None => self.t.on(row, self.l.r),
        }
    }

    fn close_r(&mut self, row: usize) {
        if !self.kept[row] {
            self.t.off(row, self.l.r);
        }
    }

    fn close_r_last(&mut self, row: usize) {
        if self.kept[row] {
            return;
        }
        match self.has_z(row) {
            Some(z) => {
                self.t.on(row, z);
                self.t.off(row, self.l.r);
                self.t.off(row, z);
            }
            None => self.t.off(row, self.l.r),
        }
    }
}

/// Emits one ladder sweep on an `n`-row grid (`n >= 2`).
pub(crate) fn sweep(t: &mut Tape, n: usize, l: &Ladder) {
    let rows: Vec<usize> = if l.down {
        (0..n).collect()
    } else {
        (0..n).rev().collect()
    };
    let mut carried = vec![false; n];
    for &r in &rows[..l.carry_in] {
        carried[r] = true;
    }
    let mut kept = vec![false; n];
    for &r in &rows[n - l.carry_out..] {
        kept[r] = true;
    }
    let w = l.w;
    let mut s = Sweep { t, l, carried, kept };
    let start = if l.carry_in == 2 {
        let (a, b) = (rows[0], rows[1]);
        let w = w.expect("carried rows need a left column");
        s.t.on(a, l.p);
        s.t.on(b, l.p);
        s.t.off(b, w);
        s.t.off(a, w);
        s.open_r(a);
        s.t.off(a, l.p);
        if n > 2 {
            s.open_r(b);
        } else {
            s.t.on(b, l.r);
        }
        s.close_r(a);
        2
    } else {
        let a = rows[0];
        s.t.on(a, l.p);
        if l.carry_in == 1 {
            s.t.off(a, w.expect("carried rows need a left column"));
        }
        s.open_r(a);
        1
    };
    for i in start..n {
        let (r, p) = (rows[i], rows[i - 1]);
        s.t.on(r, l.p);
        s.close_p(p);
        if i < n - 1 {
            s.open_r(r);
        } else {
            s.t.on(r, l.r);
        }
        s.close_r(p);
    }
    let last = rows[n - 1];
    s.close_p(last);
    s.close_r_last(last);
}

/// Chain of ladders on columns `(2k, 2k + 1)`, sweeping alternately down and up.
///
/// `carries[j]` rows are carried across bridge `j` (between ladders `j - 1`
/// and `j`; `carries[0]` is ignored). `sides[j][row]` places the leaf of each
/// remaining row of that bridge. With `tail`, the last ladder also gets right
/// leaves on the extra column `2L` for every row.
pub(crate) fn ladder_chain(
    t: &mut Tape,
    n: usize,
    carries: &[usize],
    sides: &[Vec<LeafSide>],
    tail: bool,
) -> Result<(), SchemeError> {
    let ladders = carries.len();
    for j in 1..ladders {
        if carries[j] > 2 {
            return Err(SchemeError::InvalidCarries(format!("bridge {j} carries {}", carries[j])));
        }
        if j + 2 < ladders && carries[j] == 2 && carries[j + 2] == 2 {
            return Err(SchemeError::InvalidCarries(format!(
                "bridges {j} and {} both carry two rows",
                j + 2
            )));
        }
    }
    for k in 0..ladders {
        let last = k + 1 == ladders;
        let l = Ladder {
            p: 2 * k,
            r: 2 * k + 1,
            w: (k >= 1).then(|| 2 * k - 1),
            z: (!last || tail).then_some(2 * k + 2),
            down: k % 2 == 0,
            carry_in: if k >= 1 { carries[k] } else { 0 },
            carry_out: if last { 0 } else { carries[k + 1] },
            left_leaf: (0..n).map(|r| k >= 1 && sides[k][r] == LeafSide::Left).collect(),
            right_leaf: (0..n)
                .map(|r| if last { tail } else { sides[k + 1][r] == LeafSide::Right })
                .collect(),
        };
        sweep(t, n, &l);
    }
    Ok(())
}

/// Leaf sides for a carry pattern with the required overrides.
///
/// A bridge carrying two rows ends ladder `j - 1` on an extreme row `x`. That
/// row's leaf must not sit at the far end of ladder `j - 1`'s left bridge or
/// at the start of ladder `j`'s right bridge, so both are moved to the other
/// side.
pub(crate) fn default_sides(n: usize, carries: &[usize], default: impl Fn(usize) -> LeafSide) -> Vec<Vec<LeafSide>> {
    let ladders = carries.len();
    let mut sides: Vec<Vec<LeafSide>> = (0..ladders).map(|j| vec![default(j); n]).collect();
    for j in 1..ladders {
        if carries[j] == 2 {
            let x = if (j - 1) % 2 == 0 { n - 1 } else { 0 };
            if j + 1 < ladders {
                sides[j + 1][x] = LeafSide::Left;
            }
            if j >= 2 {
                sides[j - 1][x] = LeafSide::Right;
            }
        }
    }
    sides
}

/// Staircase down one column, covering its vertical edges.
fn column_chain(t: &mut Tape, n: usize, c: usize) {
    t.on(0, c);
    for r in 1..n {
        t.on(r, c);
        t.off(r - 1, c);
    }
    t.off(n - 1, c);
}

/// Layered schemes: `layered_min`, `hanging_3_3`, `alt_2_4`, `pure_3_3`, `stitch_4_1`.
pub fn gen_layered(spec: GridSpec, scheme: SchemeId) -> Result<OpSequence, SchemeError> {
    count(scheme, spec)?;
    let (n, m) = (spec.n, spec.m);
    let mut t = Tape::new(spec);
    match scheme {
        SchemeId::LayeredMin | SchemeId::Hanging33 | SchemeId::Alt24 => {
            let ladders = m / 2;
            let transitions = ladders - 1;
            let mut carries = vec![0];
            let sides = match scheme {
                SchemeId::LayeredMin => {
                    carries.extend(std::iter::repeat_n(1, transitions));
                    default_sides(n, &carries, |_| LeafSide::Right)
                }
                SchemeId::Hanging33 => {
                    carries.extend(hanging_schedule(transitions).iter().map(|s| usize::from(s.savings.saving / 2)));
                    default_sides(n, &carries, |_| LeafSide::Right)
                }
                _ => {
                    carries.extend(alternating_schedule(transitions).iter().map(|s| usize::from(s.savings.saving / 2)));
                    default_sides(n, &carries, |j| if j % 2 == 1 { LeafSide::Left } else { LeafSide::Right })
                }
            };
            ladder_chain(&mut t, n, &carries, &sides, false)?;
        }
        SchemeId::Pure33 => {
            let ladders = (m - 1) / 2;
            let carries = vec![0; ladders];
            let sides = default_sides(n, &carries, |_| LeafSide::Right);
            ladder_chain(&mut t, n, &carries, &sides, true)?;
            column_chain(&mut t, n, m - 1);
        }
        SchemeId::Stitch41 => {
            let blocks = (m - 1) / 3;
            for i in 0..blocks {
                let l = Ladder {
                    p: 3 * i + 1,
                    r: 3 * i + 2,
                    w: Some(3 * i),
                    z: Some(3 * i + 3),
                    down: true,
                    carry_in: 0,
                    carry_out: 0,
                    left_leaf: vec![true; n],
                    right_leaf: vec![true; n],
                };
                sweep(&mut t, n, &l);
            }
            for i in 0..=blocks {
                column_chain(&mut t, n, 3 * i);
            }
        }
        other => {
            return Err(SchemeError::SelfCheck {
                scheme: other,
                detail: "not a layered scheme".into(),
            })
        }
    }
    Ok(t.into_sequence())
}
