//! Killed heat kernel on the alcove and its two Doob transforms.
//!
//! The character expansion and the Doob transform of the image sum differ
//! by a constant factor. This example prints the ratio on a few points and
//! checks that `q_doob` is a probability kernel.

use alcove::kernels::Kernels;
use alcove::lie::GroupModel;

fn main() -> alcove::Result<()> {
    let k = Kernels::with_defaults(GroupModel::su2());
    let m = k.model();
    let x = m.from_root_values(&[0.3])?;
    println!("constant |W| vol A / 4^|Φ+| = {:.12}", k.poisson_constant());
    for t in [0.25, 0.5, 1.0] {
        for beta in [0.2, 0.5, 0.8] {
            let y = m.from_root_values(&[beta])?;
            let ratio = k.q_char(t, &x, &y)? / k.q_doob(t, &x, &y)?;
            println!("t={t:<5} α(y)={beta}: u = {:.6e}, q_char/q_doob = {ratio:.12}", k.u_killed(t, &x, &y)?);
        }
        println!("t={t:<5} mass of q_doob(t, x, ·) = {:.12}", k.q_doob_mass(t, &x)?);
    }

    let k3 = Kernels::with_defaults(GroupModel::su3());
    let x = k3.model().alcove_barycenter();
    println!("SU(3) mass of q_doob(0.5, barycenter, ·) = {:.8}", k3.q_doob_mass(0.5, &x)?);
    Ok(())
}
