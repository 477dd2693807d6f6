//! Loop-group gauge action on paths.
//!
//! A closed loop `h` acts on a path by conjugation and a shift. The
//! radial part of the endpoint changes only by discretization error for
//! smooth loops, and not at all for constant loops.

use alcove::lie::GroupModel;
use alcove::radial::radial_part;
use alcove::sampler::{constant_loop, gauge_transform, random_group_element, random_smooth_loop, sample_sheet};

fn main() -> alcove::Result<()> {
    let model = GroupModel::su3();
    let ds = 1e-4;
    let steps = (1.0 / ds) as usize;
    let tau = 1.0;
    let increments = sample_sheet(&model, ds, tau, tau, 3, 0)?.path_increments(tau)?;
    let base = radial_part(&model, tau, &increments)?;
    println!("radial part: {:?}", model.root_values(&base.a));
    for amplitude in [0.02, 0.05, 0.1] {
        let h = random_smooth_loop(&model, 3, amplitude, steps, 3, 1);
        let moved = radial_part(&model, tau, &gauge_transform(&model, &increments, &h, tau)?)?;
        println!("smooth loop, amplitude {amplitude}: shift {:.2e} (ds = {ds:e})", (moved.a - base.a).norm());
    }
    let g = random_group_element(&model, 3, 2);
    let fixed = radial_part(&model, tau, &gauge_transform(&model, &increments, &constant_loop(&g, steps), tau)?)?;
    println!("constant loop: shift {:.2e}", (fixed.a - base.a).norm());
    Ok(())
}
