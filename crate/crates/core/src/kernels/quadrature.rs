//! Gauss–Legendre quadrature over alcoves `A_t`.
//!
//! The rank-1 alcove is an interval. The rank-2 alcove is a triangle with a
//! vertex at the origin; it is parametrized by collapsed coordinates
//! `P = ξ((1−η)v₁ + ηv₂)`, whose Jacobian `ξ·|det(v₁, v₂)|` vanishes at the
//! origin vertex.

use gauss_quad::GaussLegendre;

use super::Kernels;
use crate::error::{invalid, Result};
use crate::lie::{CartanVector, GroupModel};

/// Tensor Gauss–Legendre rule mapped onto alcoves.
#[derive(Clone, Debug)]
pub struct AlcoveQuadrature {
    /// Nodes and weights on `[0, 1]`.
    rule: Vec<(f64, f64)>,
}

impl AlcoveQuadrature {
    pub fn new(points: usize) -> Result<Self> {
        let gl = GaussLegendre::new(points).map_err(|e| invalid(format!("quadrature: {e}")))?;
        let rule = gl
            .into_node_weight_pairs()
            .into_iter()
            .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        Ok(Self { rule })
    }

    pub fn points(&self) -> usize {
        self.rule.len()
    }

    /// Nodes and weights of the rule on `[0, 1]`.
    pub fn unit_rule(&self) -> &[(f64, f64)] {
        &self.rule
    }

    /// Visits every node of the rule on `A_level` with its weight.
    pub fn for_each_node<F: FnMut(&CartanVector, f64)>(&self, model: &GroupModel, level: f64, mut visit: F) {
        let verts = model.alcove_vertices();
        match model.rank() {
            1 => {
                let v = verts[1] * level;
                let len = v.norm();
                for &(u, w) in &self.rule {
                    visit(&(v * u), w * len);
                }
            }
            _ => {
                let (v1, v2) = (verts[1] * level, verts[2] * level);
                let det = (v1[0] * v2[1] - v1[1] * v2[0]).abs();
                for &(xi, wx) in &self.rule {
                    for &(eta, we) in &self.rule {
                        let p = (v1 * (1.0 - eta) + v2 * eta) * xi;
                        visit(&p, wx * we * xi * det);
                    }
                }
            }
        }
    }

    /// `∫_{A_level} f`.
    pub fn integrate<F: FnMut(&CartanVector) -> f64>(&self, model: &GroupModel, level: f64, mut f: F) -> f64 {
        let mut total = 0.0;
        self.for_each_node(model, level, |p, w| total += w * f(p));
        total
    }

    /// `∫_{A_level} f` for a fallible integrand; stops at the first error.
    pub fn try_integrate<F>(&self, model: &GroupModel, level: f64, mut f: F) -> Result<f64>
    where
        F: FnMut(&CartanVector) -> Result<f64>,
    {
        let mut total = 0.0;
        let mut err = None;
        self.for_each_node(model, level, |p, w| {
            if err.is_none() {
                match f(p) {
                    Ok(v) => total += w * v,
                    Err(e) => err = Some(e),
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(total),
        }
    }
}

impl Kernels {
    /// `∫_{A_t} f` with the configured rule.
    pub fn normalize_over_alcove<F: FnMut(&CartanVector) -> f64>(&self, t: f64, f: F) -> f64 {
        self.quadrature.integrate(self.model(), t, f)
    }

    /// Fallible variant of [`Self::normalize_over_alcove`].
    pub fn try_normalize_over_alcove<F>(&self, t: f64, f: F) -> Result<f64>
    where
        F: FnMut(&CartanVector) -> Result<f64>,
    {
        self.quadrature.try_integrate(self.model(), t, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn su2_interval() {
        let k = Kernels::with_defaults(GroupModel::su2());
        let l = 1.0 / 2f64.sqrt();
        assert!((k.normalize_over_alcove(1.0, |_| 1.0) - l).abs() < 1e-12);
        let s = k.normalize_over_alcove(1.0, |y| (PI * y[0] / l).sin().powi(2));
        assert!((s - l / 2.0).abs() < 1e-12);
        assert!((k.normalize_over_alcove(3.0, |_| 1.0) - 3.0 * l).abs() < 1e-12);
    }

    #[test]
    fn su3_triangle() {
        let m = GroupModel::su3();
        let k = Kernels::with_defaults(m.clone());
        let area = m.alcove_volume();
        assert!((area - 3f64.sqrt() / 6.0).abs() < 1e-14);
        assert!((k.normalize_over_alcove(1.0, |_| 1.0) - area).abs() < 1e-12);
        assert!((k.normalize_over_alcove(2.0, |_| 1.0) - 4.0 * area).abs() < 1e-12);
        // Centroid of the triangle.
        let cx = k.normalize_over_alcove(1.0, |p| p[0]) / area;
        let cy = k.normalize_over_alcove(1.0, |p| p[1]) / area;
        let b = m.alcove_barycenter();
        assert!((cx - b[0]).abs() < 1e-12 && (cy - b[1]).abs() < 1e-12);
    }

    #[test]
    fn refinement_is_stable_for_smooth_integrands() {
        for m in [GroupModel::su2(), GroupModel::su3()] {
            let coarse = AlcoveQuadrature::new(64).unwrap();
            let fine = AlcoveQuadrature::new(128).unwrap();
            let f = |p: &CartanVector| (p.norm_sq() * 3.0).cos() * (1.0 + p[0]).exp();
            let a = coarse.integrate(&m, 1.0, f);
            let b = fine.integrate(&m, 1.0, f);
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn nodes_lie_in_alcove() {
        let m = GroupModel::su3();
        let q = AlcoveQuadrature::new(16).unwrap();
        q.for_each_node(&m, 1.5, |p, w| {
            assert!(m.in_alcove(p, 1.5, 1e-12));
            assert!(w > 0.0);
        });
    }
}
