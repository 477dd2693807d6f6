//! Exact sampling from the entrance law and a goodness-of-fit check.
//!
//! Draws `2·Y` with `Y` from the entrance law at time 1/2 and tests it
//! against `q_doob(2, γ, ·)` with a one-sample Kolmogorov–Smirnov test.

use alcove::harness::{ks_statistic, TabulatedCdf};
use alcove::kernels::{EntranceLaw, Kernels};
use alcove::lie::{CartanVector, GroupModel};
use alcove::sampler::sample_entrance;

fn main() -> alcove::Result<()> {
    let k = Kernels::with_defaults(GroupModel::su2());
    let m = k.model();
    let gamma = m.from_root_values(&[0.4])?;
    let law = EntranceLaw::new(&k, &gamma, 0.5)?;
    let mut xs: Vec<f64> = sample_entrance(&law, 20_000, 11)?.into_iter().map(|y| 2.0 * y[0]).collect();
    xs.sort_by(f64::total_cmp);

    let l = m.alcove_vertices()[1][0];
    let cdf = TabulatedCdf::new(0.0, l, 400, |x| k.q_doob(2.0, &gamma, &CartanVector::new(&[x])).unwrap_or(f64::NAN))?;
    let ks = ks_statistic(&xs, |x| cdf.cdf(x))?;
    println!(
        "n={}  D={:.5}  1% critical value={:.5}  {}",
        xs.len(),
        ks.d,
        ks.critical_at_1pct,
        if ks.d < ks.critical_at_1pct { "pass" } else { "fail" }
    );
    Ok(())
}
