use std::f64::consts::PI;

use cavity_ising::cluster::{
    apply_local_unitaries, canonical_cluster_state, corrected_cluster_state, generate_cluster_state, ghz_state,
    ising_unitary, local_corrections, measure_z, phase_gate_unitary, plus_state, stabilizer_expectations,
    verify_cluster, LuSearchOptions, PhaseGateSpec,
};
use cavity_ising::hilbert::{entanglement_entropy, fidelity, local, QuantumState};
use cavity_ising::model::Boundary;
use proptest::prelude::*;

fn boundary() -> impl Strategy<Value = Boundary> {
    prop_oneof![Just(Boundary::Periodic), Just(Boundary::Open)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn phase_gate_is_ising_up_to_local_phases(n in 2usize..=6, phi in -2.0 * PI..2.0 * PI, b in boundary()) {
        let spec = PhaseGateSpec::at_phase(n, phi, b);
        let up = phase_gate_unitary(&spec).unwrap();
        let quarter = PhaseGateSpec::at_phase(n, phi / 4.0, b);
        let rebuilt = local_corrections(&spec).unwrap().compose(&ising_unitary(&quarter).unwrap()).unwrap();
        prop_assert!(up.max_abs_diff(&rebuilt) < 1e-10);
    }

    #[test]
    fn entanglement_is_invariant_under_local_unitaries(
        n in 2usize..=5,
        b in boundary(),
        angles in prop::collection::vec((0.0..PI, -PI..PI, -PI..PI), 5),
    ) {
        let psi = generate_cluster_state(n, b).unwrap();
        let us: Vec<_> = angles.iter().take(n).map(|&(t, p, l)| local::u3(t, p, l)).collect();
        let rotated = apply_local_unitaries(&psi, &us).unwrap();
        for cut in 1..n {
            let keep: Vec<usize> = (0..cut).collect();
            let a = entanglement_entropy(&psi, &keep).unwrap();
            let c = entanglement_entropy(&rotated, &keep).unwrap();
            prop_assert!((a - c).abs() < 1e-9);
        }
    }
}

#[test]
fn lu_search_undoes_random_local_rotations() {
    let psi = canonical_cluster_state(3, Boundary::Open).unwrap();
    let us = [
        local::u3(0.4, 1.1, -0.3),
        local::u3(2.0, -0.7, 0.2),
        local::u3(1.3, 0.5, 2.9),
    ];
    let scrambled = apply_local_unitaries(&psi, &us).unwrap();
    let report = verify_cluster(&scrambled, Boundary::Open, &LuSearchOptions::default()).unwrap();
    assert!(report.fidelity > 1.0 - 1e-9);
    assert!(report.all_plus_one(1e-8));
}

#[test]
fn corrected_generation_equals_canonical_state() {
    for n in 2..=8 {
        for b in [Boundary::Periodic, Boundary::Open] {
            let a = corrected_cluster_state(n, b).unwrap();
            let c = canonical_cluster_state(n, b).unwrap();
            assert!(fidelity(&a, &c).unwrap() > 1.0 - 1e-12, "n = {n}, {b}");
            for e in stabilizer_expectations(&a, b).unwrap() {
                assert!((e - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn zero_phase_gate_leaves_product_state() {
    let spec = PhaseGateSpec::at_phase(4, 0.0, Boundary::Periodic);
    let out = phase_gate_unitary(&spec).unwrap().apply(&plus_state(4)).unwrap();
    assert!(fidelity(&out, &plus_state(4)).unwrap() > 1.0 - 1e-15);
}

fn max_single_entropy(psi: &QuantumState, qubits: &[usize]) -> f64 {
    qubits
        .iter()
        .map(|&q| entanglement_entropy(psi, &[q]).unwrap())
        .fold(0.0, f64::max)
}

#[test]
fn cluster_entanglement_persists_where_ghz_collapses() {
    // one σᶻ measurement disentangles GHZ but leaves part of a 4-chain linked;
    // cutting the chain in the middle takes two; measured qubits are removed
    let chain = canonical_cluster_state(4, Boundary::Open).unwrap();
    let (p, after_one) = measure_z(&chain, 1, 0).unwrap();
    assert!((p - 0.5).abs() < 1e-12);
    assert!(entanglement_entropy(&after_one, &[0]).unwrap() < 1e-9);
    assert!((entanglement_entropy(&after_one, &[1]).unwrap() - 1.0).abs() < 1e-9);

    let (_, after_two) = measure_z(&after_one, 1, 1).unwrap();
    assert!(max_single_entropy(&after_two, &[0, 1]) < 1e-9);

    let ghz = ghz_state(4);
    let (_, collapsed) = measure_z(&ghz, 0, 0).unwrap();
    assert!(max_single_entropy(&collapsed, &[0, 1, 2]) < 1e-9);
}
