//! The theta-function harmonic `Ψ_γ` of the space-time generator.
//!
//! Evaluates `Ψ_γ`, compares it with its image-sum form and measures the
//! finite-difference residual of `∂_t + (γ|∇) + ½Δ`.

use alcove::harness::{interior_points, pde_residual_in_chamber};
use alcove::kernels::Kernels;
use alcove::lie::{weyl_denominator, GroupModel};

fn main() -> alcove::Result<()> {
    for model in [GroupModel::su2(), GroupModel::su3()] {
        let k = Kernels::with_defaults(model.clone());
        let gamma = model.from_root_values(&vec![0.3; model.rank()])?;
        let pi_g = weyl_denominator(&model, &gamma);
        let t = (1.0 / k.image_time_limit()).ceil().max(1.0) * 2.0;
        println!("{} at t={t}", model.name());
        for x in interior_points(&model, 4, t) {
            let psi = k.big_psi(&gamma, t, &x)?;
            let ratio = psi * pi_g / k.psi2_rhs(&gamma, t, &x)? / k.psi2_constant();
            let f = |s: f64, y: &alcove::lie::CartanVector| k.big_psi(&gamma, s, y).unwrap_or(f64::NAN);
            let residual = pde_residual_in_chamber(&model, f, t, &x, &gamma, 1e-3)?;
            println!(
                "  x={:?}  Ψ={psi:.6e}  ratio/(2π)^(n/2)={ratio:.10}  relative residual={:.2e}",
                model.root_values(&x),
                residual.abs() / psi
            );
        }
    }
    Ok(())
}
