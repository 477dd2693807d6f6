//! Space-time transition densities of the conditioned process and its
//! entrance law from the tip of the chamber.
//!
//! Also checks the scaling identity between the entrance law at time
//! `1/t` and `q_doob` at time `t`.

use alcove::kernels::{EntranceLaw, Kernels};
use alcove::lie::GroupModel;

fn main() -> alcove::Result<()> {
    let k = Kernels::with_defaults(GroupModel::su2());
    let m = k.model();
    let gamma = m.from_root_values(&[0.4])?;

    let law = EntranceLaw::new(&k, &gamma, 1.0)?;
    println!("entrance law at t=1, normalizing constant {:.8}", law.normalizing_constant());
    let l = m.alcove_vertices()[1][0];
    for i in 0..=10 {
        let y = alcove::lie::CartanVector::new(&[l * i as f64 / 10.0]);
        println!("  y={:.4}  density={:.6}", y[0], law.density(&y)?);
    }

    // Scaling: t^{-n} s(1/t, y/t) equals q_doob(t, γ, y).
    for t in [0.5, 2.0] {
        let inv = EntranceLaw::new(&k, &gamma, 1.0 / t)?;
        let y = m.from_root_values(&[0.35])?;
        let lhs = inv.density(&(y * (1.0 / t)))? / t;
        let rhs = k.q_doob(t, &gamma, &y)?;
        println!("t={t}: {lhs:.12} vs {rhs:.12}");
    }

    // A transition density of the space-time process integrates to one.
    let x = m.from_root_values(&[0.6])?;
    let y_level = 2.0;
    let mass = k.try_normalize_over_alcove(y_level, |y| k.transition_density(&gamma, 1.0, &x, y_level, y))?;
    println!("mass of the transition density from (1, x) to level 2: {mass:.8}");
    Ok(())
}
