//! Radial parts of level-`τ` forms `τΛ₀ + ∫(·|dx_s)`.
//!
//! The coadjoint orbit of such a form is labelled by the conjugacy class of
//! the endpoint of `τ dX = X ∘ dx`; the label is the point `a ∈ A_τ` with
//! `X_1` conjugate to `exp(a/τ)`.

use crate::error::{invalid, Result};
use crate::lie::{orbit_coordinate, CartanVector, GroupElement, GroupModel};
use crate::sampler::{exponential_endpoint, stochastic_exponential};

/// A point `(τ, a)` of the affine Weyl chamber.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialPoint {
    pub level: f64,
    pub a: CartanVector,
}

impl RadialPoint {
    /// Radial point of a group element seen as the endpoint at level `τ`.
    pub fn from_endpoint(model: &GroupModel, level: f64, endpoint: &GroupElement) -> Result<Self> {
        if !(level > 0.0) {
            return Err(invalid(format!("radial parts need a positive level, got {level}")));
        }
        Ok(Self {
            level,
            a: orbit_coordinate(model, endpoint)? * level,
        })
    }
}

/// Radial part of `τΛ₀ + ∫(·|dx_s)` for a discretized path given by its
/// increments, flattened as `[step][coordinate]`.
pub fn radial_part(model: &GroupModel, tau: f64, increments: &[f64]) -> Result<RadialPoint> {
    let zero = vec![0.0; model.algebra_dim()];
    let x1 = exponential_endpoint(model, tau, increments, &zero)?;
    RadialPoint::from_endpoint(model, tau, &x1)
}

/// Same as [`radial_part`] but through the full path solver; kept for
/// cross-checks of the endpoint-only route.
pub fn radial_part_via_path(model: &GroupModel, tau: f64, increments: &[f64]) -> Result<RadialPoint> {
    let path = stochastic_exponential(model, tau, increments)?;
    RadialPoint::from_endpoint(model, tau, path.endpoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::{cartan_to_algebra, sample_sheet};

    fn linear(model: &GroupModel, a: &CartanVector, steps: usize) -> Vec<f64> {
        let c = cartan_to_algebra(model, a);
        (0..steps).flat_map(|_| c.iter().map(|v| v / steps as f64)).collect()
    }

    #[test]
    fn linear_paths() {
        let m = GroupModel::su2();
        let a = m.from_root_values(&[0.3]).unwrap();
        let r = radial_part(&m, 1.0, &linear(&m, &a, 20)).unwrap();
        assert!((r.a - a).norm() < 1e-12 && r.level == 1.0);

        let far = m.from_root_values(&[1.25]).unwrap();
        let r = radial_part(&m, 1.0, &linear(&m, &far, 20)).unwrap();
        assert!((m.root_values(&r.a)[0] - 0.75).abs() < 1e-12);

        let b = m.from_root_values(&[1.5]).unwrap();
        let r = radial_part(&m, 2.0, &linear(&m, &b, 20)).unwrap();
        assert!((r.a - b).norm() < 1e-12 && r.level == 2.0);
    }

    #[test]
    fn results_lie_in_the_alcove_and_routes_agree() {
        for m in [GroupModel::su2(), GroupModel::su3()] {
            for (i, tau) in [0.5, 1.0, 3.0].into_iter().enumerate() {
                let g = sample_sheet(&m, 0.01, 1.0, 2.0, 4, i as u64).unwrap();
                let inc = g.path_increments(2.0).unwrap();
                let r = radial_part(&m, tau, &inc).unwrap();
                assert!(m.in_alcove(&r.a, tau, 1e-12));
                let p = radial_part_via_path(&m, tau, &inc).unwrap();
                assert!((r.a - p.a).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn scaling_law() {
        let m = GroupModel::su3();
        let g = sample_sheet(&m, 0.02, 1.0, 1.0, 1, 0).unwrap();
        let inc = g.path_increments(1.0).unwrap();
        let tau = 1.7;
        let scaled: Vec<f64> = inc.iter().map(|v| v / tau).collect();
        let r = radial_part(&m, tau, &inc).unwrap();
        let s = radial_part(&m, 1.0, &scaled).unwrap();
        assert_eq!(r.a, s.a * tau);
        assert!(radial_part(&m, 0.0, &inc).is_err());
    }
}
