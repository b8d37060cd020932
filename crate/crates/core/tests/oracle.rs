//! Ledger against brute-force oracle on generated and hand-written sequences.

use qubus::phase_algebra::standard;
use qubus::schemes::{gen_box4, gen_negative_layered, negative_box3};
use qubus::verify::{mixed_difference_check, walsh_decompose, DEFAULT_ORACLE_LIMIT};
use qubus::{
    cross_validate, generate, grid_graph, oracle_phase_function, BusOp, GridSpec, OpSequence,
    Quadrature, SchemeId, TargetGraph, VerifyMode,
};

#[test]
fn every_scheme_on_3x4_cross_validates() {
    for (n, m) in [(3, 4), (3, 5), (2, 6), (4, 4)] {
        let spec = GridSpec::new(n, m).unwrap();
        for id in SchemeId::ALL {
            let Ok(seq) = generate(id, spec) else { continue };
            let cv = cross_validate(&seq, &grid_graph(spec), VerifyMode::Modular, DEFAULT_ORACLE_LIMIT).unwrap();
            assert!(!cv.ledger_only);
            assert!(cv.passed, "{id} {n}x{m}: {:?}", cv.discrepancies);
        }
    }
}

#[test]
fn u_cp_displayed_state() {
    let f = oracle_phase_function(&standard::u_cp(), 20).unwrap();
    assert_eq!(f.values(), &[2, -2, -2, 2]);
}

#[test]
fn box4_sixteen_entries() {
    // phase = sum over the four edges of 2 z_a z_b, with the realized signs
    let seq = gen_box4();
    let f = oracle_phase_function(&seq, 20).unwrap();
    let l = qubus::accumulate(&seq);
    let edges = [(0, 1), (0, 2), (1, 3), (2, 3)];
    for x in 0..16usize {
        let z = |q: usize| if x >> q & 1 == 1 { -1 } else { 1 };
        let expected: i64 = edges
            .iter()
            .map(|&(a, b)| l.pair_phase(a, b).unwrap() * z(a) * z(b))
            .sum();
        assert_eq!(f.get(x), expected, "x={x:04b}");
    }
    for &(a, b) in &edges {
        assert_eq!(l.pair_phase(a, b).unwrap().abs(), 2);
    }
}

#[test]
fn negative_schemes_cross_validate_with_events() {
    let spec = GridSpec::new(4, 4).unwrap();
    let seq = gen_negative_layered(spec).unwrap();
    let cv = cross_validate(&seq, &grid_graph(spec), VerifyMode::Modular, 20).unwrap();
    assert!(cv.passed, "{:?}", cv.discrepancies);
    assert!(!cv.report.create_destroy_events.is_empty());

    let g = grid_graph(GridSpec::new(3, 3).unwrap());
    let cv = cross_validate(&negative_box3(), &g, VerifyMode::Modular, 20).unwrap();
    assert!(cv.passed, "{:?}", cv.discrepancies);
}

#[test]
fn sign_flip_mutation_is_caught() {
    let spec = GridSpec::new(3, 3).unwrap();
    let g = grid_graph(spec);
    let seq = generate(SchemeId::Naive, spec).unwrap();
    for i in [0, 7, 20] {
        let mut ops = seq.ops().to_vec();
        ops[i] = ops[i].inverse();
        let bad = OpSequence::new(seq.qubit_count(), ops).unwrap();
        let cv = cross_validate(&bad, &g, VerifyMode::Modular, 20).unwrap();
        assert!(!cv.passed);
        assert!(!cv.discrepancies.is_empty());
    }
}

#[test]
fn oracle_limit_reports_ledger_only() {
    let spec = GridSpec::new(5, 5).unwrap();
    let seq = generate(SchemeId::Chains, spec).unwrap();
    let cv = cross_validate(&seq, &grid_graph(spec), VerifyMode::Modular, 20).unwrap();
    assert!(cv.ledger_only);
    assert!(cv.passed);
}

#[test]
fn mixed_quadrature_qubit_still_agrees() {
    let ops = vec![
        BusOp::new(0, Quadrature::Position, 1),
        BusOp::new(1, Quadrature::Momentum, 1),
        BusOp::new(0, Quadrature::Momentum, 1),
        BusOp::new(1, Quadrature::Momentum, -1),
        BusOp::new(0, Quadrature::Position, -1),
        BusOp::new(0, Quadrature::Momentum, -1),
    ];
    let seq = OpSequence::new(2, ops).unwrap();
    let f = oracle_phase_function(&seq, 20).unwrap();
    let s = walsh_decompose(&f).unwrap();
    let l = qubus::accumulate(&seq);
    assert_eq!(s.pair(0, 1), l.pair_phase(0, 1).unwrap());
    assert_eq!(s.global, l.global_phase());
    let empty = TargetGraph::new(2, []).unwrap();
    let class_ok = VerifyMode::Modular.accepts(l.pair_phase(0, 1).unwrap(), false);
    assert_eq!(mixed_difference_check(&f, &empty, VerifyMode::Modular).unwrap(), class_ok);
}
