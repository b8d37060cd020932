//! Walsh decomposition and mixed-difference tests on phase tables.

use std::collections::BTreeMap;

use super::{PhaseFunction, VerifyError, VerifyMode};
use crate::targets::TargetGraph;

/// Walsh coefficients of a phase table, grouped by character weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub qubits: usize,
    /// Weight-0 coefficient.
    pub global: i64,
    /// Weight-1 coefficients per qubit.
    pub linear: Vec<i64>,
    /// Nonzero weight-2 coefficients keyed by `(a, b)` with `a < b`.
    pub pairs: BTreeMap<(usize, usize), i64>,
    /// Characters of weight at least 3 with nonzero coefficient, or with a
    /// non-integral coefficient at any weight.
    pub higher_weight: Vec<u64>,
}

impl WalshSpectrum {
    pub fn pair(&self, a: usize, b: usize) -> i64 {
        self.pairs.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }
}

/// Expands `f(z) = sum_S c_S prod_{a in S} z_a` by a fast Walsh-Hadamard transform.
pub fn walsh_decompose(f: &PhaseFunction) -> Result<WalshSpectrum, VerifyError> {
    let q = f.qubits();
    let mut t: Vec<i64> = f.values().to_vec();
    let len = t.len();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (u, v) = (t[i], t[i + h]);
                t[i] = u + v;
                t[i + h] = u - v;
            }
        }
        h *= 2;
    }
    let norm = len as i64;
    let mut spectrum = WalshSpectrum {
        qubits: q,
        global: 0,
        linear: vec![0; q],
        pairs: BTreeMap::new(),
        higher_weight: Vec::new(),
    };
    for (mask, &total) in t.iter().enumerate() {
        if total == 0 {
            continue;
        }
        if total % norm != 0 {
            spectrum.higher_weight.push(mask as u64);
            continue;
        }
        let c = total / norm;
        match mask.count_ones() {
            0 => spectrum.global = c,
            1 => spectrum.linear[mask.trailing_zeros() as usize] = c,
            2 => {
                let a = mask.trailing_zeros() as usize;
                let b = (usize::BITS - 1 - mask.leading_zeros()) as usize;
                spectrum.pairs.insert((a, b), c);
            }
            _ => spectrum.higher_weight.push(mask as u64),
        }
    }
    Ok(spectrum)
}

fn check_graph_fits(f: &PhaseFunction, graph: &TargetGraph) -> Result<(), VerifyError> {
    if graph.qubit_count() > f.qubits() {
        return Err(VerifyError::QubitCountMismatch {
            seq: f.qubits(),
            graph: graph.qubit_count(),
        });
    }
    Ok(())
}

/// Accepts iff `f` has Walsh weight at most two with integral coefficients and
/// every weight-2 coefficient is in the mode's edge or non-edge class.
pub fn walsh_check(f: &PhaseFunction, graph: &TargetGraph, mode: VerifyMode) -> Result<bool, VerifyError> {
    check_graph_fits(f, graph)?;
    let s = walsh_decompose(f)?;
    if !s.higher_weight.is_empty() {
        return Ok(false);
    }
    let q = f.qubits();
    for a in 0..q {
        for b in a + 1..q {
            if !mode.accepts(s.pair(a, b), graph.has_edge(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Accepts iff for every pair the second difference
/// `f(x^a^b) - f(x^a) - f(x^b) + f(x)` is the same for all `x` and, divided
/// by four, is in the mode's edge or non-edge class.
pub fn mixed_difference_check(
    f: &PhaseFunction,
    graph: &TargetGraph,
    mode: VerifyMode,
) -> Result<bool, VerifyError> {
    check_graph_fits(f, graph)?;
    let q = f.qubits();
    let v = f.values();
    for a in 0..q {
        for b in a + 1..q {
            let (ea, eb) = (1usize << a, 1usize << b);
            let d0 = v[ea | eb] - v[ea] - v[eb] + v[0];
            let constant = (0..v.len())
                .filter(|x| x & (ea | eb) == 0)
                .all(|x| v[x | ea | eb] - v[x | ea] - v[x | eb] + v[x] == d0);
            if !constant || d0 % 4 != 0 || !mode.accepts(d0 / 4, graph.has_edge(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_algebra::standard;
    use crate::verify::oracle_phase_function;

    #[test]
    fn u_cp_spectrum() {
        let f = oracle_phase_function(&standard::u_cp(), 20).unwrap();
        let s = walsh_decompose(&f).unwrap();
        assert_eq!(s.pair(0, 1), 2);
        assert_eq!(s.global, 0);
        assert!(s.higher_weight.is_empty());
        let v = f.values();
        // second difference of the displayed phases: 8 units = pi
        assert_eq!(v[3] - v[1] - v[2] + v[0], 8);
    }

    #[test]
    fn checks_against_graphs() {
        let f = oracle_phase_function(&standard::u_cp(), 20).unwrap();
        let edge = TargetGraph::new(2, [(0, 1)]).unwrap();
        let empty = TargetGraph::new(2, []).unwrap();
        assert!(walsh_check(&f, &edge, VerifyMode::Strict).unwrap());
        assert!(mixed_difference_check(&f, &edge, VerifyMode::Strict).unwrap());
        assert!(!walsh_check(&f, &empty, VerifyMode::Modular).unwrap());
        assert!(!mixed_difference_check(&f, &empty, VerifyMode::Modular).unwrap());
        let zero = PhaseFunction::from_table(vec![0; 4]).unwrap();
        assert!(walsh_check(&zero, &empty, VerifyMode::Strict).unwrap());
    }

    #[test]
    fn cubic_term_rejected() {
        // f = 8 * z0 z1 z2 in a table over 3 qubits
        let vals: Vec<i64> = (0..8usize)
            .map(|x| if x.count_ones() % 2 == 0 { 8 } else { -8 })
            .collect();
        let f = PhaseFunction::from_table(vals).unwrap();
        let s = walsh_decompose(&f).unwrap();
        assert_eq!(s.higher_weight, vec![7]);
        let g = TargetGraph::new(3, []).unwrap();
        assert!(!walsh_check(&f, &g, VerifyMode::Modular).unwrap());
        assert!(!mixed_difference_check(&f, &g, VerifyMode::Modular).unwrap());
    }
}
