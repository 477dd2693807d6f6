//! Affine weights, the anti-invariant theta function and the space-time
//! harmonic function `Ψ_γ`.
//!
//! An affine weight `τΛ₀ + φ_c + sδ` is stored as the triple
//! `(τ, c, s)`. Its pairing with `d + b` is `(c|b) + s`.

use std::f64::consts::PI;

use super::Kernels;
use crate::error::{invalid, Result};
use crate::lie::{for_each_lattice_point, weyl_denominator, CartanVector, WeylElement};

/// `τΛ₀ + φ_finite + delta·δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineWeight {
    pub level: f64,
    pub finite: CartanVector,
    pub delta: f64,
}

impl AffineWeight {
    pub fn new(level: f64, finite: CartanVector, delta: f64) -> Self {
        Self { level, finite, delta }
    }

    /// `τΛ₀ + φ_a`.
    pub fn at_level(level: f64, a: CartanVector) -> Self {
        Self::new(level, a, 0.0)
    }

    /// The translation `t_α`: the finite part moves by `τα` and the
    /// `δ`-coefficient drops by `(φ|α) + ½(α|α)τ`.
    pub fn translate(&self, alpha: &CartanVector) -> Self {
        Self {
            level: self.level,
            finite: self.finite + *alpha * self.level,
            delta: self.delta - (self.finite.dot(alpha) + 0.5 * alpha.norm_sq() * self.level),
        }
    }

    /// Action of a finite Weyl group element (fixes `Λ₀` and `δ`).
    pub fn weyl_image(&self, w: &WeylElement) -> Self {
        Self {
            finite: w.apply(&self.finite),
            ..*self
        }
    }

    /// `⟨λ, d + b⟩ = (c|b) + s`.
    pub fn pair_with_d_plus(&self, b: &CartanVector) -> f64 {
        self.finite.dot(b) + self.delta
    }
}

/// Free-function form of [`AffineWeight::translate`].
pub fn affine_translation(lambda: &AffineWeight, alpha: &CartanVector) -> AffineWeight {
    lambda.translate(alpha)
}

impl Kernels {
    /// Anti-invariant theta function
    /// `π(b)^{−1} Σ_{v∈W, α∈Q^∨} det(v) exp⟨t_α v(τΛ₀ + φ_a), d + b⟩`.
    pub fn theta_psi(&self, b: &CartanVector, tau: f64, a: &CartanVector) -> Result<f64> {
        self.check_time(tau, "level")?;
        let pi_b = weyl_denominator(self.model(), b);
        if pi_b == 0.0 {
            return Err(invalid(format!("theta function needs π(b) ≠ 0, got b = {b:?}")));
        }
        Ok(self.theta_sum(b, tau, a, self.cfg.lattice_radius) / pi_b)
    }

    /// The numerator of [`Self::theta_psi`], truncated to `radius` standard
    /// deviations around the dominant translations.
    pub(crate) fn theta_sum(&self, b: &CartanVector, tau: f64, a: &CartanVector, radius: f64) -> f64 {
        let model = self.model();
        // The exponent is −‖va + τα − τb‖²/2τ plus a constant, a Gaussian in
        // α of width 1/√τ centred at b − va/τ.
        let r = radius / tau.sqrt();
        let mut sum = 0.0;
        for v in model.weyl_group() {
            let lambda = AffineWeight::at_level(tau, *a).weyl_image(v);
            let center = *b - lambda.finite * (1.0 / tau);
            let mut part = 0.0;
            for_each_lattice_point(model, &center, r, 1.0, |alpha| {
                part += lambda.translate(&alpha).pair_with_d_plus(b).exp();
            });
            sum += v.det * part;
        }
        sum
    }

    /// `Ψ_γ(t, x) = e^{−(γ|x)} ψ_γ(t, x)` on the chamber `{x ∈ A_t}`.
    ///
    /// The theta series cancels to a result of relative size
    /// `e^{−2π²‖ρ‖²/t}`, so it is summed directly only for
    /// `1/t ≤ image_time_limit()`. Below that level the equivalent form
    /// `(2π)^{n/2} t^{−n/2} u_{1/t}(γ, x/t) e^{t‖γ−x/t‖²/2} / π(γ)` is used.
    /// A drift on `∂A` is handled as a limit from the interior.
    pub fn big_psi(&self, gamma: &CartanVector, t: f64, x: &CartanVector) -> Result<f64> {
        self.check_time(t, "time")?;
        self.check_in_alcove(x, t)?;
        self.check_in_alcove(gamma, 1.0)?;
        let model = self.model();
        let n = model.rank() as f64;
        let direct = 1.0 / t <= self.image_time_limit();
        self.regularized(gamma, |g| {
            let pi_g = weyl_denominator(model, g);
            if direct {
                Ok((-g.dot(x)).exp() * self.theta_sum(g, t, x, self.cfg.lattice_radius) / pi_g)
            } else {
                Ok((2.0 * PI).powf(n / 2.0) * self.psi2_unchecked(g, t, x) / pi_g)
            }
        })
    }

    /// `t^{−n/2} u_{1/t}(γ, x/t) exp(t‖γ − x/t‖²/2)`.
    pub fn psi2_rhs(&self, gamma: &CartanVector, t: f64, x: &CartanVector) -> Result<f64> {
        self.check_time(t, "time")?;
        self.check_in_alcove(x, t)?;
        self.check_in_alcove(gamma, 1.0)?;
        Ok(self.psi2_unchecked(gamma, t, x))
    }

    fn psi2_unchecked(&self, gamma: &CartanVector, t: f64, x: &CartanVector) -> f64 {
        let n = self.model().rank() as f64;
        let z = *x * (1.0 / t);
        t.powf(-n / 2.0) * self.u_unchecked(1.0 / t, gamma, &z) * (0.5 * t * (*gamma - z).norm_sq()).exp()
    }

    /// The constant `Ψ_γ π(γ) / psi2_rhs = (2π)^{n/2}`.
    pub fn psi2_constant(&self) -> f64 {
        (2.0 * PI).powf(self.model().rank() as f64 / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::GroupModel;

    fn models() -> Vec<Kernels> {
        vec![
            Kernels::with_defaults(GroupModel::su2()),
            Kernels::with_defaults(GroupModel::su3()),
        ]
    }

    #[test]
    fn translation_triple() {
        let lam = AffineWeight::new(2.0, CartanVector::new(&[0.3, -0.1]), 0.7);
        assert_eq!(lam.translate(&CartanVector::zeros(2)), lam);
        let a = CartanVector::new(&[1.0, 0.5]);
        let b = CartanVector::new(&[-0.25, 2.0]);
        let lhs = lam.translate(&a).translate(&b);
        let rhs = lam.translate(&(a + b));
        assert_eq!(lhs.level, lam.level);
        assert!((lhs.finite - rhs.finite).norm() < 1e-15);
        assert!((lhs.delta - rhs.delta).abs() < 1e-14);
        // The invariant form ‖φ‖² − 2τs is preserved by translations.
        let q = |l: &AffineWeight| l.finite.norm_sq() + 2.0 * l.level * l.delta;
        assert!((q(&lam) - q(&lhs)).abs() < 1e-13);
    }

    #[test]
    fn theta_vanishes_at_origin_and_walls() {
        for k in models() {
            let m = k.model().clone();
            let b = m.alcove_barycenter() * 0.9;
            for tau in [0.7, 1.0, 2.5] {
                assert!(k.theta_psi(&b, tau, &CartanVector::zeros(m.rank())).unwrap().abs() < 1e-10);
                let wall = m.alcove_vertices()[1] * tau;
                assert!(k.theta_psi(&b, tau, &wall).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn theta_truncation_is_converged() {
        for k in models() {
            let m = k.model().clone();
            let b = m.alcove_barycenter() * 1.1;
            let pi_b = weyl_denominator(&m, &b);
            for tau in [1.0, 1.7, 3.0] {
                let a = (m.alcove_barycenter() + m.alcove_vertices()[1] * 0.2) * tau;
                let base = k.theta_psi(&b, tau, &a).unwrap();
                let wide = k.theta_sum(&b, tau, &a, 2.0 * k.config().lattice_radius) / pi_b;
                assert!((base - wide).abs() < 1e-10 * base.abs(), "{base} vs {wide}");
            }
        }
    }

    #[test]
    fn theta_rejects_singular_b() {
        let k = Kernels::with_defaults(GroupModel::su2());
        assert!(k.theta_psi(&CartanVector::zeros(1), 1.0, &CartanVector::new(&[0.3])).is_err());
    }

    #[test]
    fn psi_matches_image_form_on_both_routes() {
        for k in models() {
            let m = k.model().clone();
            let gamma = m.alcove_barycenter() * 0.8 + m.alcove_vertices()[1] * 0.1;
            let pi_g = weyl_denominator(&m, &gamma);
            for t in [1.0, 1.5, 3.0] {
                let x = (m.alcove_barycenter() + m.alcove_vertices()[1] * 0.3) * t;
                let direct = k.big_psi(&gamma, t, &x).unwrap() * pi_g;
                let images = k.psi2_rhs(&gamma, t, &x).unwrap() * k.psi2_constant();
                assert!((direct / images - 1.0).abs() < 1e-9, "{} t={t}", m.name());
            }
        }
    }

    #[test]
    fn psi_is_positive_inside_and_zero_on_boundary() {
        for k in models() {
            let m = k.model().clone();
            let gamma = m.alcove_barycenter() * 0.7;
            for t in [0.4, 1.0, 2.0] {
                let inside = k.big_psi(&gamma, t, &(m.alcove_barycenter() * t)).unwrap();
                assert!(inside > 0.0);
                for v in &m.alcove_vertices()[1..] {
                    // In rank 2 the segment from the origin to a vertex is a wall;
                    // in rank 1 the boundary is the vertex itself.
                    let edge = *v * (if m.rank() == 1 { 1.0 } else { 0.4 } * t);
                    let e = k.big_psi(&gamma, t, &edge).unwrap();
                    assert!(e.abs() < 1e-10 * inside, "{} t={t}: {e} vs {inside}", m.name());
                }
            }
            assert!(k.big_psi(&gamma, 1.0, &(m.alcove_vertices()[1] * 1.5)).is_err());
        }
    }

    #[test]
    fn psi_with_zero_drift_is_a_limit() {
        let k = Kernels::with_defaults(GroupModel::su2());
        let x = CartanVector::new(&[0.5]);
        let zero = k.big_psi(&CartanVector::zeros(1), 1.5, &x).unwrap();
        let near = k.big_psi(&CartanVector::new(&[1e-5]), 1.5, &x).unwrap();
        // First-order agreement: the drift factor e^{−(γ|x)} is not even in γ.
        assert!((zero - near).abs() < 1e-4 * zero.abs());
        assert!(zero > 0.0);
    }
}
