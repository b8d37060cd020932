//! Target graphs, grid layouts, bus colorings and local phase corrections.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::phase_algebra::Quadrature;

/// Errors for target construction and coloring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error("grid must have at least 2 rows and 2 columns, got {n}x{m}")]
    GridTooSmall { n: usize, m: usize },
    #[error("edge ({0}, {1}) is a self loop")]
    SelfLoop(usize, usize),
    #[error("edge ({a}, {b}) out of range for {count} qubits")]
    EdgeOutOfRange { a: usize, b: usize, count: usize },
    #[error("graph is not bipartite; odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<usize> },
    #[error("no entangling sign given for edge ({0}, {1})")]
    MissingSign(usize, usize),
    #[error("sign for ({0}, {1}) is not an edge of the graph")]
    UnknownEdge(usize, usize),
}

/// Rectangular cluster layout with `n` rows and `m` columns, indexed row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    pub n: usize,
    pub m: usize,
}

impl GridSpec {
    pub fn new(n: usize, m: usize) -> Result<Self, TargetError> {
        if n < 2 || m < 2 {
            return Err(TargetError::GridTooSmall { n, m });
        }
        Ok(GridSpec { n, m })
    }

    pub fn qubit_count(self) -> usize {
        self.n * self.m
    }

    /// Row-major index of `(r, c)`.
    pub fn index(self, r: usize, c: usize) -> usize {
        r * self.m + c
    }

    /// `(row, column)` of a qubit.
    pub fn coords(self, q: usize) -> (usize, usize) {
        (q / self.m, q % self.m)
    }

    /// Checkerboard quadrature: even `r + c` on momentum, odd on position.
    pub fn quadrature(self, q: usize) -> Quadrature {
        let (r, c) = self.coords(q);
        if (r + c) % 2 == 0 {
            Quadrature::Momentum
        } else {
            Quadrature::Position
        }
    }

    /// Nearest-neighbour edge count `2nm - n - m`.
    pub fn edge_count(self) -> usize {
        2 * self.n * self.m - self.n - self.m
    }
}

/// Simple undirected graph on qubits `0..qubit_count`, edges stored as `(low, high)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TargetGraph {
    qubit_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl TargetGraph {
    pub fn new(
        qubit_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TargetError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(TargetError::SelfLoop(a, b));
            }
            if a >= qubit_count || b >= qubit_count {
                return Err(TargetError::EdgeOutOfRange {
                    a,
                    b,
                    count: qubit_count,
                });
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(TargetGraph {
            qubit_count,
            edges: set,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Adjacency lists in ascending order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.qubit_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }
}

/// Nearest-neighbour graph of a grid.
pub fn grid_graph(spec: GridSpec) -> TargetGraph {
    let mut edges = Vec::with_capacity(spec.edge_count());
    for r in 0..spec.n {
        for c in 0..spec.m {
            let q = spec.index(r, c);
            if c + 1 < spec.m {
                edges.push((q, q + 1));
            }
            if r + 1 < spec.n {
                edges.push((q, q + spec.m));
            }
        }
    }
    TargetGraph::new(spec.qubit_count(), edges).expect("grid edges are valid")
}

/// Quadrature assignment per qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<Quadrature>,
}

impl Coloring {
    pub fn new(assignment: Vec<Quadrature>) -> Self {
        Coloring { assignment }
    }

    pub fn get(&self, q: usize) -> Quadrature {
        self.assignment[q]
    }

    pub fn as_slice(&self) -> &[Quadrature] {
        &self.assignment
    }

    /// Whether every edge joins opposite quadratures.
    pub fn is_proper(&self, graph: &TargetGraph) -> bool {
        graph.edges().all(|(a, b)| self.assignment[a] != self.assignment[b])
    }
}

/// Two-colors a graph so every edge joins opposite quadratures.
///
/// Each component's lowest-index qubit gets momentum, which reproduces the
/// grid checkerboard. Fails with an odd-cycle witness when no coloring exists.
pub fn checkerboard_coloring(graph: &TargetGraph) -> Result<Coloring, TargetError> {
    let n = graph.qubit_count();
    let adj = graph.adjacency();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued qubits are colored");
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        parent[v] = Some(u);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => {
                        return Err(TargetError::NotBipartite {
                            cycle: odd_cycle(&parent, u, v),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Coloring::new(
        color
            .into_iter()
            .map(|c| {
                if c == Some(true) {
                    Quadrature::Position
                } else {
                    Quadrature::Momentum
                }
            })
            .collect(),
    ))
}

/// Closes the BFS-tree paths from `u` and `v` at their lowest common ancestor.
fn odd_cycle(parent: &[Option<usize>], u: usize, v: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while let Some(y) = parent[x] {
            p.push(y);
            x = y;
        }
        p
    };
    let pu = path(u);
    let pv = path(v);
    let on_u: BTreeSet<usize> = pu.iter().copied().collect();
    let lca = *pv.iter().find(|x| on_u.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let tail: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}

/// Single-qubit phases completing a conditional phase, in units of `pi/8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalCorrection {
    pub qubit: usize,
    /// Phase applied to `|0>`.
    pub zero: i64,
    /// Phase applied to `|1>`.
    pub one: i64,
}

/// Per-qubit phases turning realized `exp(+-i pi/4 Z Z)` edges into exact `CZ`s.
///
/// An edge with sign `s` contributes `(-s, 3s)` to each endpoint. Only qubits
/// touched by an edge are listed.
pub fn local_corrections(
    graph: &TargetGraph,
    signs: &BTreeMap<(usize, usize), i8>,
) -> Result<Vec<LocalCorrection>, TargetError> {
    for &(a, b) in signs.keys() {
        if !graph.has_edge(a, b) {
            return Err(TargetError::UnknownEdge(a, b));
        }
    }
    let mut acc: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    for (a, b) in graph.edges() {
        let s = signs
            .get(&(a, b))
            .or_else(|| signs.get(&(b, a)))
            .copied()
            .ok_or(TargetError::MissingSign(a, b))?;
        let s = i64::from(s.signum());
        for q in [a, b] {
            let e = acc.entry(q).or_default();
            e.0 -= s;
            e.1 += 3 * s;
        }
    }
    Ok(acc
        .into_iter()
        .map(|(qubit, (zero, one))| LocalCorrection { qubit, zero, one })
        .collect())
}
