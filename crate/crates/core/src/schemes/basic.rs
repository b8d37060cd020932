//! Single gates, stars, chains and the small restricted gadgets.

use super::ladder::{sweep, Ladder};
use super::{SchemeError, Tape};
use crate::phase_algebra::{BusOp, OpSequence, Quadrature};
use crate::targets::{grid_graph, Coloring, GridSpec, TargetGraph};

fn quad_of(coloring: &Coloring, q: usize) -> Result<Quadrature, SchemeError> {
    coloring
        .as_slice()
        .get(q)
        .copied()
        .ok_or(SchemeError::QubitOutOfRange(q))
}

/// Four-op conditional phase between opposite-quadrature qubits.
///
/// The position qubit is displaced first; the pair phase is `+2` units.
pub fn gen_cphase(qa: usize, qb: usize, coloring: &Coloring) -> Result<OpSequence, SchemeError> {
    let (da, db) = (quad_of(coloring, qa)?, quad_of(coloring, qb)?);
    if da == db {
        return Err(SchemeError::SameQuadrature(qa, qb));
    }
    let (x, p) = if da == Quadrature::Position { (qa, qb) } else { (qb, qa) };
    let ops = vec![
        BusOp::new(x, Quadrature::Position, -1),
        BusOp::new(p, Quadrature::Momentum, -1),
        BusOp::new(x, Quadrature::Position, 1),
        BusOp::new(p, Quadrature::Momentum, 1),
    ];
    Ok(OpSequence::new(coloring.as_slice().len(), ops).expect("indices checked"))
}

/// Star gadget: all leaves on, center on, all leaves off, center off.
///
/// Uses `2 + 2 * leaves` ops; the center sign makes every edge `+2` units.
pub fn gen_fused_star(center: usize, leaves: &[usize], coloring: &Coloring) -> Result<OpSequence, SchemeError> {
    let dc = quad_of(coloring, center)?;
    for &l in leaves {
        if quad_of(coloring, l)? == dc {
            return Err(SchemeError::ColorViolation { center, leaf: l });
        }
    }
    let dl = dc.other();
    let sigma = BusOp::new(0, dl, 1).amplitude().cross(BusOp::new(0, dc, 1).amplitude()) as i8;
    let mut ops = Vec::with_capacity(2 + 2 * leaves.len());
    ops.extend(leaves.iter().map(|&l| BusOp::new(l, dl, 1)));
    ops.push(BusOp::new(center, dc, -sigma));
    ops.extend(leaves.iter().map(|&l| BusOp::new(l, dl, -1)));
    ops.push(BusOp::new(center, dc, sigma));
    Ok(OpSequence::new(coloring.as_slice().len(), ops).expect("indices checked"))
}

/// One conditional phase per grid edge, edges in index order.
pub fn gen_naive(spec: GridSpec) -> OpSequence {
    let graph = grid_graph(spec);
    let coloring = grid_coloring(spec);
    let mut seq = OpSequence::empty(spec.qubit_count());
    for (a, b) in graph.edges() {
        let g = gen_cphase(a, b, &coloring).expect("grid edges join opposite quadratures");
        seq = seq.then(&g);
    }
    seq
}

fn grid_coloring(spec: GridSpec) -> Coloring {
    Coloring::new((0..spec.qubit_count()).map(|q| spec.quadrature(q)).collect())
}

/// Sliding attach/detach pattern entangling consecutive qubits of a path in `2k` ops.
pub fn staircase(chain: &[usize], coloring: &Coloring) -> Result<OpSequence, SchemeError> {
    for w in chain.windows(2) {
        if quad_of(coloring, w[0])? == quad_of(coloring, w[1])? {
            return Err(SchemeError::SameQuadrature(w[0], w[1]));
        }
    }
    let mut ops = Vec::with_capacity(2 * chain.len());
    for (i, &q) in chain.iter().enumerate() {
        ops.push(BusOp::new(q, quad_of(coloring, q)?, 1));
        if i >= 1 {
            let p = chain[i - 1];
            ops.push(BusOp::new(p, quad_of(coloring, p)?, -1));
        }
    }
    if let Some(&last) = chain.last() {
        ops.push(BusOp::new(last, quad_of(coloring, last)?, -1));
    }
    Ok(OpSequence::new(coloring.as_slice().len(), ops).expect("indices checked"))
}

/// Every row as a chain, then every column.
pub fn gen_chains(spec: GridSpec) -> OpSequence {
    let coloring = grid_coloring(spec);
    let mut seq = OpSequence::empty(spec.qubit_count());
    for r in 0..spec.n {
        let row: Vec<usize> = (0..spec.m).map(|c| spec.index(r, c)).collect();
        seq = seq.then(&staircase(&row, &coloring).expect("grid rows alternate"));
    }
    for c in 0..spec.m {
        let col: Vec<usize> = (0..spec.n).map(|r| spec.index(r, c)).collect();
        seq = seq.then(&staircase(&col, &coloring).expect("grid columns alternate"));
    }
    seq
}

/// 2x2 box in eight ops, each qubit on the bus once.
pub fn gen_box4() -> OpSequence {
    let spec = GridSpec::new(2, 2).expect("2x2 grid");
    let mut t = Tape::new(spec);
    let (a, b, c, d) = (0, 1, 2, 3);
    t.on_q(a);
    t.on_q(b);
    t.on_q(c);
    t.off_q(a);
    t.on_q(d);
    t.off_q(b);
    t.off_q(c);
    t.off_q(d);
    t.into_sequence()
}

/// Target of [`gen_open_layer4`]: an `n x 4` grid whose outer columns have no
/// vertical edges.
pub fn open_layer4_graph(n: usize) -> Result<TargetGraph, SchemeError> {
    let spec = GridSpec::new(n, 4).map_err(|_| SchemeError::TooFewRows(n))?;
    let full = grid_graph(spec);
    let edges = full.edges().filter(|&(a, b)| {
        let (ca, cb) = (spec.coords(a).1, spec.coords(b).1);
        !(ca == cb && (ca == 0 || ca == 3))
    });
    Ok(TargetGraph::new(spec.qubit_count(), edges)?)
}

/// Width-4 open layer with every qubit on the bus exactly once (two ops each).
///
/// The middle columns form a ladder; each outer qubit is wrapped around one
/// event of its row in the ladder.
pub fn gen_open_layer4(n: usize) -> Result<OpSequence, SchemeError> {
    let spec = GridSpec::new(n, 4).map_err(|_| SchemeError::TooFewRows(n))?;
    let mut t = Tape::new(spec);
    let l = Ladder {
        p: 1,
        r: 2,
        w: Some(0),
        z: Some(3),
        down: true,
        carry_in: 0,
        carry_out: 0,
        left_leaf: vec![true; n],
        right_leaf: vec![true; n],
    };
    sweep(&mut t, n, &l);
    Ok(t.into_sequence())
}
