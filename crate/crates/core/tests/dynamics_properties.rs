use cavity_ising::dynamics::{evolve_with, expm, propagator, EvolutionSpec, HamiltonianSource, Spectral};
use cavity_ising::hilbert::{local, max_abs, CMatrix, LinearOp, QuantumState, SpaceLayout, C64};
use cavity_ising::model::{build_lab_hamiltonian, build_rotating_hamiltonian, full_layout, Boundary, ModelParams};
use proptest::prelude::*;

fn small_params() -> ModelParams {
    ModelParams {
        sites: 2,
        omega0: 2.0,
        omega_c: 2.5,
        omega_l: 2.0,
        g: 0.5,
        rabi: 1.0,
        hopping: 0.2,
        n_max: 1,
        boundary: Boundary::Periodic,
        lattice_unit: 1.0,
    }
}

fn random_hermitian(dim: usize, entries: &[(f64, f64)]) -> LinearOp {
    let mut m = CMatrix::zeros(dim, dim);
    let mut it = entries.iter().cycle();
    for i in 0..dim {
        for j in i..dim {
            let &(re, im) = it.next().unwrap();
            if i == j {
                m[(i, i)] = C64::new(re, 0.0);
            } else {
                m[(i, j)] = C64::new(re, im);
                m[(j, i)] = C64::new(re, -im);
            }
        }
    }
    LinearOp::new(SpaceLayout::qubits(dim.trailing_zeros() as usize), m).unwrap()
}

/// Total excitation number `Σ S⁺S⁻ + Σ a†a`, the generator of the drive frame.
fn excitation_number(params: &ModelParams) -> LinearOp {
    let layout = full_layout(params).unwrap();
    let mut n = LinearOp::zeros(&layout);
    for j in 0..params.sites {
        n = n
            .try_add(&LinearOp::embed_local(&layout, j, &local::projector(2, 1)).unwrap())
            .unwrap();
        let mode = LinearOp::embed_local(&layout, params.sites + j, &local::number(params.n_max)).unwrap();
        n = n.try_add(&mode).unwrap();
    }
    n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagators_are_unitary_and_compose(
        entries in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 10),
        t1 in -5.0f64..5.0,
        t2 in -5.0f64..5.0,
    ) {
        let h = random_hermitian(4, &entries);
        let u1 = propagator(&h, t1).unwrap();
        let u2 = propagator(&h, t2).unwrap();
        let u12 = propagator(&h, t1 + t2).unwrap();
        prop_assert!(u1.unitarity_error() < 1e-10);
        prop_assert!(u12.unitarity_error() < 1e-10);
        prop_assert!(max_abs(&(u1.matrix() * u2.matrix() - u12.matrix())) < 1e-9);
    }

    #[test]
    fn spectral_path_matches_taylor_series(
        entries in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 10),
        t in -3.0f64..3.0,
    ) {
        let h = random_hermitian(4, &entries);
        let exact = propagator(&h, t).unwrap();
        let series = expm(&(h.matrix() * C64::new(0.0, -t)));
        prop_assert!(max_abs(&(exact.matrix() - series)) < 1e-9);
    }

    #[test]
    fn energy_is_conserved(rabi in 0.5f64..5.0, g in 0.01f64..0.5, t in 0.0f64..200.0) {
        let params = ModelParams { rabi, g, n_max: 2, ..ModelParams::fig2() };
        let h = build_rotating_hamiltonian(&params).unwrap();
        let psi0 = QuantumState::basis(h.layout(), &[0, 1, 0, 1]).unwrap();
        let e0 = psi0.expectation(&h).unwrap().re;
        let psi = QuantumState::new(h.layout().clone(), Spectral::new(&h).unwrap().evolve(psi0.amplitudes(), t)).unwrap();
        prop_assert!((psi.expectation(&h).unwrap().re - e0).abs() < 1e-8 * e0.abs().max(1.0));
    }
}

/// Lab-frame stepping read out in the drive frame against the exact
/// rotating-frame propagator.
fn stepped_error(dt: f64) -> f64 {
    let params = small_params();
    let t_end = 2.0;
    let rotating = build_rotating_hamiltonian(&params).unwrap();
    let layout = rotating.layout().clone();
    let initial = QuantumState::basis(&layout, &[1, 0, 0, 0]).unwrap();
    let exact = Spectral::new(&rotating).unwrap();

    let p = params.clone();
    let source = HamiltonianSource::TimeDependent(Box::new(move |t| build_lab_hamiltonian(&p, t)));
    let frame = excitation_number(&params).scale_real(params.omega_l);
    let spec = EvolutionSpec::stepped(source, t_end, 5, dt).with_frame(frame);
    let mut worst: f64 = 0.0;
    evolve_with(&initial, &spec, |t, psi| {
        let reference = exact.evolve(initial.amplitudes(), t);
        worst = worst.max((psi.amplitudes() - reference).norm());
        Ok(())
    })
    .unwrap();
    worst
}

#[test]
fn stepped_lab_evolution_converges_at_second_order() {
    let errors: Vec<f64> = [0.04, 0.02, 0.01].iter().map(|&dt| stepped_error(dt)).collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((1.8..2.3).contains(&order), "observed order {order} from {errors:?}");
    }
    assert!(errors[2] < 1e-3);
}

#[test]
fn stepping_a_fixed_hamiltonian_is_exact() {
    let params = small_params();
    let h = build_rotating_hamiltonian(&params).unwrap();
    let initial = QuantumState::basis(h.layout(), &[0, 0, 1, 0]).unwrap();
    let exact = Spectral::new(&h).unwrap();
    let spec = EvolutionSpec::stepped(HamiltonianSource::Fixed(h), 3.0, 7, 0.3);
    evolve_with(&initial, &spec, |t, psi| {
        assert!((psi.amplitudes() - exact.evolve(initial.amplitudes(), t)).norm() < 1e-12);
        Ok(())
    })
    .unwrap();
}

#[test]
fn readout_frame_commutes_with_excitation_preserving_observables() {
    // the frame is generated by the excitation number, so populations of
    // number eigenstates are frame independent
    let params = small_params();
    let h = build_rotating_hamiltonian(&params).unwrap();
    let layout = h.layout().clone();
    let initial = QuantumState::basis(&layout, &[1, 0, 0, 0]).unwrap();
    let frame = excitation_number(&params).scale_real(0.7);
    let plain = EvolutionSpec::exact(h.clone(), 4.0, 9);
    let framed = EvolutionSpec::exact(h, 4.0, 9).with_frame(frame);
    let mut a = Vec::new();
    let mut b = Vec::new();
    evolve_with(&initial, &plain, |_, psi| {
        a.push((0..layout.total_dim()).map(|i| psi.probability(i)).collect::<Vec<_>>());
        Ok(())
    })
    .unwrap();
    evolve_with(&initial, &framed, |_, psi| {
        b.push((0..layout.total_dim()).map(|i| psi.probability(i)).collect::<Vec<_>>());
        Ok(())
    })
    .unwrap();
    for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
        assert!((x - y).abs() < 1e-12);
    }
}
