//! Exact sampling of the entrance law by rejection from the uniform law on
//! the alcove.

use rand::Rng;
use rayon::prelude::*;

use super::rng::stream_rng;
use crate::error::{Error, Result};
use crate::kernels::EntranceLaw;
use crate::lie::{CartanVector, GroupModel};

/// Envelope factor over the largest density seen on the quadrature nodes.
pub const ENVELOPE_FACTOR: f64 = 1.05;

/// Uniform point of `A_level` from two uniforms on `[0, 1)`.
pub fn uniform_in_alcove(model: &GroupModel, level: f64, u: f64, v: f64) -> CartanVector {
    let verts = model.alcove_vertices();
    match model.rank() {
        1 => verts[1] * (level * u),
        _ => {
            let r = u.sqrt();
            (verts[1] * (r * (1.0 - v)) + verts[2] * (r * v)) * level
        }
    }
}

/// `n` independent draws from `law`. Draw `i` uses stream `i` of `seed`,
/// so the result does not depend on the number of threads.
pub fn sample_entrance(law: &EntranceLaw, n: usize, seed: u64) -> Result<Vec<CartanVector>> {
    let envelope = ENVELOPE_FACTOR * law.node_maximum();
    let model = law.kernels().model();
    let t = law.time();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64, 0);
            loop {
                let y = uniform_in_alcove(model, t, rng.gen(), rng.gen());
                let d = law.density(&y)?;
                if d > envelope {
                    return Err(Error::EnvelopeViolation {
                        density: d,
                        envelope,
                        point: y.coords().to_vec(),
                    });
                }
                if rng.gen::<f64>() * envelope < d {
                    return Ok(y);
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Kernels;

    #[test]
    fn samples_lie_in_the_alcove_and_match_the_mean() {
        for m in [GroupModel::su2(), GroupModel::su3()] {
            let k = Kernels::with_defaults(m.clone());
            let gamma = m.alcove_barycenter() * 0.5;
            let t = 1.0;
            let law = EntranceLaw::new(&k, &gamma, t).unwrap();
            let n = 4000;
            let ys = sample_entrance(&law, n, 17).unwrap();
            assert!(ys.iter().all(|y| m.in_alcove(y, t, 1e-12)));
            for c in 0..m.rank() {
                let mean = k.normalize_over_alcove(t, |y| y[c] * law.density(y).unwrap());
                let second = k.normalize_over_alcove(t, |y| y[c] * y[c] * law.density(y).unwrap());
                let sd = (second - mean * mean).sqrt();
                let emp = ys.iter().map(|y| y[c]).sum::<f64>() / n as f64;
                assert!((emp - mean).abs() < 3.0 * sd / (n as f64).sqrt(), "{} coord {c}", m.name());
            }
        }
    }

    #[test]
    fn draws_are_reproducible() {
        let m = GroupModel::su2();
        let k = Kernels::with_defaults(m.clone());
        let law = EntranceLaw::new(&k, &(m.alcove_barycenter() * 0.8), 0.5).unwrap();
        let a = sample_entrance(&law, 50, 3).unwrap();
        let b = sample_entrance(&law, 50, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_entrance(&law, 50, 4).unwrap());
    }

    #[test]
    fn uniform_points_cover_the_triangle() {
        let m = GroupModel::su3();
        let area = m.alcove_volume();
        let mut inside_half = 0;
        let n = 20_000;
        let mut rng = stream_rng(1, 0, 0);
        for _ in 0..n {
            let y = uniform_in_alcove(&m, 1.0, rng.gen(), rng.gen());
            assert!(m.in_alcove(&y, 1.0, 1e-12));
            if m.in_alcove(&y, 0.5, 0.0) {
                inside_half += 1;
            }
        }
        // A_{1/2} has a quarter of the area of A.
        let p = inside_half as f64 / n as f64;
        assert!((p - 0.25).abs() < 4.0 * (0.25f64 * 0.75 / n as f64).sqrt(), "{p} (area {area})");
    }
}
