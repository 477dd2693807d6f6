//! Stochastic exponentials of Brownian sheets and their radial parts.
//!
//! For one sheet, follows the level `t` radial part `(t, a)` for both
//! simulation modes and shows that the matrices stay unitary.

use alcove::lie::{orbit_coordinate, GroupModel};
use alcove::radial::RadialPoint;
use alcove::sampler::{sample_sheet, simulate_group_sheet, SheetMode};

fn main() -> alcove::Result<()> {
    let model = GroupModel::su2();
    let gamma = model.from_root_values(&[0.4])?;
    let grid = sample_sheet(&model, 1e-3, 0.25, 2.0, 7, 0)?;
    for t in [0.25, 0.5, 1.0, 2.0] {
        let x = simulate_group_sheet(&model, &grid, &gamma, SheetMode::X, t)?;
        let y = simulate_group_sheet(&model, &grid, &gamma, SheetMode::Y, t)?;
        let radial = RadialPoint::from_endpoint(&model, t, y.endpoint())?;
        println!(
            "t={t:<4}  O(X_1,t)={:.4}  radial part of Y_1,t: (τ={}, α(a)={:.4})  max unitarity defect {:.1e}",
            model.root_values(&orbit_coordinate(&model, x.endpoint())?)[0],
            radial.level,
            model.root_values(&radial.a)[0],
            x.max_unitarity_defect().max(y.max_unitarity_defect()),
        );
    }
    Ok(())
}
