//! Photon band of the cavity ring and its detuning from the drive.

use cavity_ising::model::{cavity_dispersion, effective_jz, normal_modes, FourierNormalization, ModelParams};

fn main() -> cavity_ising::Result<()> {
    for n in 2..=6 {
        let params = ModelParams {
            sites: n,
            ..ModelParams::fig2()
        };
        let spectrum = cavity_dispersion(&params)?;
        let mut fourier = spectrum.omegas();
        fourier.sort_by(f64::total_cmp);
        let real_space: Vec<f64> = normal_modes(&params).iter().map(|m| m.0).collect();
        println!("N = {n}");
        for m in &spectrum.modes {
            println!(
                "  k = {:.4}  omega_k = {:.4}  delta_k = {:+.4}",
                m.k, m.omega_k, m.delta_k
            );
        }
        let gap = fourier
            .iter()
            .zip(&real_space)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("  max |Fourier - hopping-matrix eigenvalue| = {gap:.1e}");
        println!(
            "  J_z normalized = {:.4e} GHz",
            effective_jz(&params, FourierNormalization::Normalized)?
        );
    }
    Ok(())
}
