//! The two-qubit phase gate: entanglement generated as a function of the
//! accumulated phase, and the gate at phase π.

use std::f64::consts::PI;

use cavity_ising::cluster::{phase_gate_unitary, plus_state, PhaseGateSpec};
use cavity_ising::hilbert::entanglement_entropy;
use cavity_ising::model::Boundary;

fn main() -> cavity_ising::Result<()> {
    println!("{:>8} {:>10}", "phi/pi", "S(1)");
    for step in 0..=8 {
        let phi = PI * step as f64 / 4.0;
        let gate = phase_gate_unitary(&PhaseGateSpec::at_phase(2, phi, Boundary::Periodic))?;
        let psi = gate.apply(&plus_state(2))?;
        println!("{:>8.3} {:>10.6}", phi / PI, entanglement_entropy(&psi, &[0])?);
    }
    let gate = phase_gate_unitary(&PhaseGateSpec::cluster(2, Boundary::Periodic))?;
    println!("\nU_p(pi) diagonal (basis dd, du, ud, uu):");
    for z in gate.diagonal() {
        println!("  {:+.3} {:+.3}i", z.re, z.im);
    }
    Ok(())
}
