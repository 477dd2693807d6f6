//! Gauge action of loops on paths.
//!
//! A closed loop `h` acts on a path increment sequence by
//! `Δx̃_k = h_{k+½} Δx_k h_{k+½}⁻¹ − τ log(h_{k+1} h_k⁻¹)`, where
//! `h_{k+½} = exp(½ log(h_{k+1} h_k⁻¹)) h_k` is the geodesic midpoint. The
//! solution of the transformed equation is `X̃_k = h_0 X_k h_k⁻¹` up to the
//! splitting error of the scheme, so its endpoint is conjugate to the
//! original one. Conjugating at the midpoint rather than at `h_k` cancels
//! the leading commutator `½[h_k Δx_k h_k⁻¹, log(h_{k+1} h_k⁻¹)]` of that
//! error.

use std::f64::consts::PI;

use rand_distr::{Distribution, StandardNormal};

use super::rng::stream_rng;
use crate::error::{invalid, Result};
use crate::lie::{GroupElement, GroupModel};

/// Tolerance on `‖h_0 − h_K‖_max` for a loop to count as closed.
const CLOSURE_TOL: f64 = 1e-10;

/// Applies the loop `h_0, …, h_K` (with `h_0 = h_K`) to `K` increments.
pub fn gauge_transform(model: &GroupModel, increments: &[f64], loop_points: &[GroupElement], tau: f64) -> Result<Vec<f64>> {
    let dim = model.algebra_dim();
    if increments.len() % dim != 0 {
        return Err(invalid("increments are not a whole number of steps"));
    }
    let steps = increments.len() / dim;
    if loop_points.len() != steps + 1 {
        return Err(invalid(format!(
            "loop has {} points, expected {} for {steps} steps",
            loop_points.len(),
            steps + 1
        )));
    }
    let gap = (loop_points[0].matrix() - loop_points[steps].matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if gap > CLOSURE_TOL {
        return Err(invalid(format!("loop is not closed: ‖h_0 − h_K‖ = {gap:e}")));
    }
    let mut out = Vec::with_capacity(increments.len());
    for (k, cell) in increments.chunks_exact(dim).enumerate() {
        let rel = &loop_points[k + 1] * &loop_points[k].inverse();
        let log = rel.principal_log()?;
        let l = model.algebra_coords(&log);
        let half: Vec<f64> = l.iter().map(|v| 0.5 * v).collect();
        let mid = &GroupElement::exp_algebra(model, &half) * &loop_points[k];
        let h = mid.matrix();
        let a = model.algebra_coords(&(h * model.algebra_matrix(cell) * h.adjoint()));
        out.extend(a.iter().zip(&l).map(|(a, l)| a - tau * l));
    }
    Ok(out)
}

/// A random smooth closed loop sampled at `s = k/steps`, `k = 0..=steps`:
/// `h(s) = exp(Σ_j a_j sin 2πjs + b_j (cos 2πjs − 1))` with Gaussian algebra
/// coefficients of size `amplitude/j`. `h(0) = h(1) = e` exactly.
pub fn random_smooth_loop(
    model: &GroupModel,
    modes: usize,
    amplitude: f64,
    steps: usize,
    seed: u64,
    stream: u64,
) -> Vec<GroupElement> {
    let dim = model.algebra_dim();
    let mut rng = stream_rng(seed, stream, 0);
    let coeffs: Vec<(Vec<f64>, Vec<f64>)> = (1..=modes)
        .map(|j| {
            let scale = amplitude / j as f64;
            let mut draw = || -> Vec<f64> {
                (0..dim)
                    .map(|_| {
                        let z: f64 = StandardNormal.sample(&mut rng);
                        scale * z
                    })
                    .collect()
            };
            (draw(), draw())
        })
        .collect();
    (0..=steps)
        .map(|k| {
            if k == 0 || k == steps {
                return GroupElement::identity(model.matrix_dim());
            }
            let s = k as f64 / steps as f64;
            let mut c = vec![0.0; dim];
            for (j, (a, b)) in coeffs.iter().enumerate() {
                let w = 2.0 * PI * (j + 1) as f64 * s;
                for i in 0..dim {
                    c[i] += a[i] * w.sin() + b[i] * (w.cos() - 1.0);
                }
            }
            GroupElement::exp_algebra(model, &c)
        })
        .collect()
}

/// The constant loop `h_k = h`.
pub fn constant_loop(h: &GroupElement, steps: usize) -> Vec<GroupElement> {
    vec![h.clone(); steps + 1]
}

/// The exponential of a standard Gaussian algebra element. Not Haar
/// distributed, but generic enough for conjugation tests.
pub fn random_group_element(model: &GroupModel, seed: u64, stream: u64) -> GroupElement {
    let mut rng = stream_rng(seed, stream, 0);
    let c: Vec<f64> = (0..model.algebra_dim())
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            z
        })
        .collect();
    GroupElement::exp_algebra(model, &c)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::orbit_coordinate;
    use crate::sampler::{sample_sheet, stochastic_exponential};

    #[test]
    fn identity_loop_leaves_increments_unchanged() {
        let m = GroupModel::su3();
        let g = sample_sheet(&m, 0.02, 1.0, 1.0, 1, 0).unwrap();
        let inc = g.path_increments(1.0).unwrap();
        let id = constant_loop(&GroupElement::identity(3), g.s_steps);
        let out = gauge_transform(&m, &inc, &id, 1.3).unwrap();
        for (a, b) in inc.iter().zip(&out) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn open_loops_are_rejected() {
        let m = GroupModel::su2();
        let mut lp = random_smooth_loop(&m, 3, 0.5, 10, 1, 0);
        assert!(lp[0].unitarity_defect() < 1e-14);
        lp[10] = random_group_element(&m, 4, 0);
        assert!(gauge_transform(&m, &vec![0.0; 30], &lp, 1.0).is_err());
        assert!(gauge_transform(&m, &vec![0.0; 27], &lp[..10], 1.0).is_err());
    }

    #[test]
    fn transformed_endpoint_is_conjugate() {
        for m in [GroupModel::su2(), GroupModel::su3()] {
            let steps = 2000;
            let ds = 1.0 / steps as f64;
            let g = sample_sheet(&m, ds, 1.0, 1.0, 3, 0).unwrap();
            let inc = g.path_increments(1.0).unwrap();
            let lp = random_smooth_loop(&m, 3, 0.05, steps, 8, 0);
            let tau = 1.5;
            let out = gauge_transform(&m, &inc, &lp, tau).unwrap();
            let a = stochastic_exponential(&m, tau, &inc).unwrap();
            let b = stochastic_exponential(&m, tau, &out).unwrap();
            let oa = orbit_coordinate(&m, a.endpoint()).unwrap();
            let ob = orbit_coordinate(&m, b.endpoint()).unwrap();
            assert!(tau * (oa - ob).norm() < 5.0 * ds, "{oa:?} vs {ob:?}");
        }
    }

    #[test]
    fn constant_loops_conjugate_exactly() {
        let m = GroupModel::su3();
        let g = sample_sheet(&m, 0.01, 1.0, 1.0, 6, 0).unwrap();
        let inc = g.path_increments(1.0).unwrap();
        let h = random_group_element(&m, 2, 0);
        let out = gauge_transform(&m, &inc, &constant_loop(&h, g.s_steps), 0.7).unwrap();
        let a = stochastic_exponential(&m, 0.7, &inc).unwrap();
        let b = stochastic_exponential(&m, 0.7, &out).unwrap();
        let expected = &(&h * a.endpoint()) * &h.inverse();
        let gap = (expected.matrix() - b.endpoint().matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(gap < 1e-12);
    }
}
