//! Strategies and property bodies shared by the property tests and the acceptance run.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use qubus::verify::{mixed_difference_check, walsh_decompose};
use qubus::{
    accumulate, invert, ledger_equal, oracle_phase_function, BusLedger, BusOp, OpSequence,
    Quadrature, TargetGraph, VerifyMode,
};

pub fn quad() -> impl Strategy<Value = Quadrature> {
    prop_oneof![Just(Quadrature::Position), Just(Quadrature::Momentum)]
}

pub fn op(qubits: usize) -> impl Strategy<Value = BusOp> {
    (0..qubits, quad(), prop_oneof![Just(1i8), Just(-1i8)]).prop_map(|(q, d, s)| BusOp::new(q, d, s))
}

/// Arbitrary, usually open, sequence on 1..=6 qubits.
pub fn sequence() -> impl Strategy<Value = OpSequence> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(op(n), 0..24)))
        .prop_map(|(n, ops)| OpSequence::new(n, ops).unwrap())
}

/// Appends the ops that cancel every qubit's net displacement.
pub fn close(seq: &OpSequence) -> OpSequence {
    let mut out = seq.clone();
    for q in 0..seq.qubit_count() {
        for d in [Quadrature::Position, Quadrature::Momentum] {
            let net: i64 = seq
                .ops()
                .iter()
                .filter(|o| o.qubit == q && o.quad == d)
                .map(|o| i64::from(o.sign))
                .sum();
            for _ in 0..net.abs() {
                out.push(BusOp::new(q, d, -net.signum() as i8)).unwrap();
            }
        }
    }
    out
}

pub fn closed_sequence() -> impl Strategy<Value = OpSequence> {
    sequence().prop_map(|s| close(&s))
}

/// Phase in units of pi/8 as twice the signed area swept by the bus, from
/// floating-point displacements of size sqrt(pi/8).
pub fn area_phase(seq: &OpSequence, x: usize) -> Option<i64> {
    let beta = (PI / 8.0).sqrt();
    let mut path = vec![Complex64::new(0.0, 0.0)];
    for o in seq.ops() {
        let z = if x >> o.qubit & 1 == 1 { -1.0 } else { 1.0 };
        let step = match o.quad {
            Quadrature::Position => Complex64::new(z * f64::from(o.sign) * beta, 0.0),
            Quadrature::Momentum => Complex64::new(0.0, z * f64::from(o.sign) * beta),
        };
        path.push(path[path.len() - 1] + step);
    }
    if path[path.len() - 1].norm() > 1e-9 {
        return None;
    }
    let twice_area: f64 = path.windows(2).map(|w| w[0].re * w[1].im - w[0].im * w[1].re).sum();
    let units = twice_area / (PI / 8.0);
    let r = units.round();
    ((units - r).abs() < 1e-6).then_some(r as i64)
}

/// `U` followed by its inverse leaves nothing behind, global phase included.
pub fn inverse_law(seq: &OpSequence) -> Result<(), TestCaseError> {
    let l = accumulate(&seq.then(&invert(seq)));
    prop_assert!(ledger_equal(&l, &BusLedger::new(seq.qubit_count()), false).unwrap());
    Ok(())
}

/// Ops on a single quadrature never produce a phase.
pub fn same_quadrature_nullity(seq: &OpSequence, d: Quadrature) -> Result<(), TestCaseError> {
    let ops: Vec<BusOp> = seq.ops().iter().map(|o| BusOp::new(o.qubit, d, o.sign)).collect();
    let l = accumulate(&OpSequence::new(seq.qubit_count(), ops).unwrap());
    prop_assert!(l.nonzero_pairs().is_empty());
    prop_assert_eq!(l.global_phase(), 0);
    Ok(())
}

/// Ledger pair phases are the Walsh weight-2 coefficients of the enumerated
/// phase table, which also matches the swept-area oracle.
pub fn ledger_oracle_agreement(seq: &OpSequence) -> Result<(), TestCaseError> {
    let l = accumulate(seq);
    prop_assert!(l.nonzero_residuals().is_empty());
    let f = oracle_phase_function(seq, 20).unwrap();
    for x in 0..1usize << seq.qubit_count() {
        prop_assert_eq!(Some(f.get(x)), area_phase(seq, x), "x={}", x);
    }
    let s = walsh_decompose(&f).unwrap();
    prop_assert!(s.higher_weight.is_empty());
    prop_assert!(s.linear.iter().all(|&c| c == 0));
    prop_assert_eq!(s.global, l.global_phase());
    let n = seq.qubit_count();
    for a in 0..n {
        for b in a + 1..n {
            prop_assert_eq!(s.pair(a, b), l.pair_phase(a, b).unwrap());
        }
    }
    Ok(())
}

/// Second differences of the phase table are constant and equal four times
/// the ledger pair phase.
pub fn mixed_difference_constancy(seq: &OpSequence) -> Result<(), TestCaseError> {
    let l = accumulate(seq);
    let f = oracle_phase_function(seq, 20).unwrap();
    let v = f.values();
    let n = seq.qubit_count();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ea, eb) = (1usize << a, 1usize << b);
            let expected = 4 * l.pair_phase(a, b).unwrap();
            for x in (0..v.len()).filter(|x| x & (ea | eb) == 0) {
                prop_assert_eq!(v[x | ea | eb] - v[x | ea] - v[x | eb] + v[x], expected);
            }
            if l.pair_phase(a, b).unwrap().rem_euclid(4) == 2 {
                edges.push((a, b));
            }
        }
    }
    // the class check agrees with the ledger's own classification
    let g = TargetGraph::new(n, edges).unwrap();
    let ledger_ok = (0..n).all(|a| {
        (a + 1..n).all(|b| VerifyMode::Modular.accepts(l.pair_phase(a, b).unwrap(), g.has_edge(a, b)))
    });
    prop_assert_eq!(mixed_difference_check(&f, &g, VerifyMode::Modular).unwrap(), ledger_ok);
    Ok(())
}
