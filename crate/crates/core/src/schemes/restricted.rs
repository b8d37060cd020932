//! Exhaustive search for single-pass restricted sequences.
//!
//! Each qubit is attached once and detached once. With one interval per
//! qubit, two opposite-quadrature qubits pick up a full phase when their
//! intervals cross, nothing when disjoint, and a phase that is created and
//! then removed when one interval is nested in the other. A restricted
//! sequence therefore needs every edge to cross and every other
//! opposite-quadrature pair to be disjoint.

use std::collections::HashSet;

use super::SchemeError;
use crate::phase_algebra::{BusOp, OpSequence};
use crate::targets::{Coloring, TargetGraph};

struct Search<'a> {
    adj: Vec<u64>,
    coloring: &'a Coloring,
    n: usize,
    dead: HashSet<(u64, Vec<usize>)>,
    visits: usize,
    limit: usize,
}

impl Search<'_> {
    fn opposite(&self, a: usize, b: usize) -> bool {
        self.coloring.get(a) != self.coloring.get(b)
    }

    /// `on` lists attached qubits in attach order; `met` marks qubits that
    /// have overlapped each neighbour.
    fn dfs(
        &mut self,
        done: u64,
        on: &mut Vec<usize>,
        met: &mut Vec<u64>,
        out: &mut Vec<(usize, bool)>,
    ) -> Result<bool, SchemeError> {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        if done == full {
            return Ok(true);
        }
        let key = (done, on.clone());
        if self.dead.contains(&key) {
            return Ok(false);
        }
        self.visits += 1;
        if self.visits > self.limit {
            return Err(SchemeError::SearchLimit(self.limit));
        }
        let on_mask: u64 = on.iter().fold(0, |m, &q| m | 1 << q);
        // detach moves
        for idx in 0..on.len() {
            let v = on[idx];
            let later_ok = on[..idx].iter().all(|&u| !self.opposite(u, v));
            let met_all = self.adj[v] & !met[v] == 0;
            if !later_ok || !met_all {
                continue;
            }
            on.remove(idx);
            out.push((v, false));
            if self.dfs(done | 1 << v, on, met, out)? {
                return Ok(true);
            }
            out.pop();
            on.insert(idx, v);
        }
        // attach moves
        for v in 0..self.n {
            if (done | on_mask) >> v & 1 == 1 {
                continue;
            }
            let allowed = on.iter().all(|&u| !self.opposite(u, v) || self.adj[v] >> u & 1 == 1);
            if !allowed {
                continue;
            }
            let saved: Vec<u64> = on.iter().map(|&u| met[u]).collect();
            let saved_v = met[v];
            for &u in on.iter() {
                if self.adj[v] >> u & 1 == 1 {
                    met[u] |= 1 << v;
                    met[v] |= 1 << u;
                }
            }
            on.push(v);
            out.push((v, true));
            if self.dfs(done, on, met, out)? {
                return Ok(true);
            }
            out.pop();
            on.pop();
            for (&u, &s) in on.iter().zip(&saved) {
                met[u] = s;
            }
            met[v] = saved_v;
        }
        self.dead.insert(key);
        Ok(false)
    }
}

/// Finds an attach/detach order realizing `graph` with one bus interval per
/// qubit and no created-then-destroyed phase, or proves none exists.
///
/// Returns `Ok(None)` when the search space is exhausted.
pub fn restricted_single_pass(
    graph: &TargetGraph,
    coloring: &Coloring,
    limit: usize,
) -> Result<Option<Vec<(usize, bool)>>, SchemeError> {
    let n = graph.qubit_count();
    if n > 64 || coloring.as_slice().len() < n {
        return Err(SchemeError::RestrictedInfeasible { qubits: n });
    }
    let mut adj = vec![0u64; n];
    for (a, b) in graph.edges() {
        if coloring.get(a) == coloring.get(b) {
            return Err(SchemeError::SameQuadrature(a, b));
        }
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut s = Search {
        adj,
        coloring,
        n,
        dead: HashSet::new(),
        visits: 0,
        limit,
    };
    let mut out = Vec::with_capacity(2 * n);
    let found = s.dfs(0, &mut Vec::new(), &mut vec![0; n], &mut out)?;
    Ok(found.then_some(out))
}

/// Single-pass restricted sequence for `graph`, refusing when none exists.
pub fn gen_restricted_single_pass(graph: &TargetGraph, coloring: &Coloring) -> Result<OpSequence, SchemeError> {
    match restricted_single_pass(graph, coloring, 5_000_000)? {
        Some(events) => {
            let ops = events
                .into_iter()
                .map(|(q, attach)| BusOp::new(q, coloring.get(q), if attach { 1 } else { -1 }))
                .collect();
            Ok(OpSequence::new(graph.qubit_count(), ops).expect("indices from the graph"))
        }
        None => Err(SchemeError::RestrictedInfeasible {
            qubits: graph.qubit_count(),
        }),
    }
}
