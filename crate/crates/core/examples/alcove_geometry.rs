//! Root data, alcoves and the orbit coordinate of a group element.
//!
//! Run with `cargo run --example alcove_geometry`.

use alcove::lie::{exp_cartan, fold_to_alcove, orbit_coordinate, weyl_denominator, GroupModel};

fn main() -> alcove::Result<()> {
    for model in [GroupModel::su2(), GroupModel::su3()] {
        println!("{}: rank {}, |W| = {}", model.name(), model.rank(), model.weyl_group().len());
        println!("  ‖ρ‖² = {:.6}, vol A = {:.6}", model.rho().norm_sq(), model.alcove_volume());
        for (i, v) in model.alcove_vertices().iter().enumerate() {
            println!("  vertex {i}: root values {:?}", model.root_values(v));
        }

        // A point far outside the alcove folds back into A_2.
        let x = model.from_root_values(&vec![3.7; model.rank()])?;
        let (a, op) = fold_to_alcove(&model, &x, 2.0)?;
        println!("  fold at level 2: {:?} -> {:?}", model.root_values(&x), model.root_values(&a));
        assert!((op.apply_at_level(&x, 2.0) - a).norm() < 1e-12);

        // The conjugacy class of exp(x) is labelled by a point of A.
        let u = exp_cartan(&model, &x);
        let o = orbit_coordinate(&model, &u)?;
        println!("  orbit coordinate of exp(x): {:?}", model.root_values(&o));
        println!("  π at the barycenter: {:.6}", weyl_denominator(&model, &model.alcove_barycenter()));
    }
    Ok(())
}
