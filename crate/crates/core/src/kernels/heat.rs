//! Heat kernel on the Cartan subalgebra, the kernel killed on the boundary of
//! the alcove, and the radial Brownian transition densities.
//!
//! The killed kernel has two representations. The image sum converges fast
//! at small times but its terms cancel to a result of size `e^{−2π²‖ρ‖²t}`,
//! which costs relative accuracy at large times. The eigenfunction expansion
//! is the reverse. [`Kernels::u_killed`] uses images up to the time where
//! the cancellation reaches `e^{−10}` and the expansion beyond.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{gaussian_norm, Kernels};
use crate::error::{invalid, Result};
use crate::lie::{alternating_sum, character, for_each_lattice_point, weyl_denominator, CartanVector};

impl Kernels {
    /// `(2πt)^{−n/2} exp(−‖x−y‖²/2t)`.
    pub fn heat_kernel(&self, t: f64, x: &CartanVector, y: &CartanVector) -> Result<f64> {
        self.check_time(t, "time")?;
        Ok(gaussian_norm(t, x.rank()) * (-(*x - *y).norm_sq() / (2.0 * t)).exp())
    }

    /// Largest time at which image sums keep about 12 significant digits:
    /// `2π²‖ρ‖²t ≤ 10`. Close to 1 for SU(2) and to 1/4 for SU(3).
    pub fn image_time_limit(&self) -> f64 {
        10.0 / (2.0 * PI * PI * self.model().rho().norm_sq())
    }

    /// Killed kernel by the method of images, `Σ_{w∈Ω} det(w) p_t(x, w y)`.
    pub fn u_images(&self, t: f64, x: &CartanVector, y: &CartanVector) -> f64 {
        let model = self.model();
        let radius = self.cfg.lattice_radius * t.sqrt();
        let mut sum = 0.0;
        for w in model.weyl_group() {
            let wy = w.apply(y);
            let center = *x - wy;
            let mut part = 0.0;
            for_each_lattice_point(model, &center, radius, 1.0, |beta| {
                part += (-(center - beta).norm_sq() / (2.0 * t)).exp();
            });
            sum += w.det * part;
        }
        gaussian_norm(t, model.rank()) * sum
    }

    /// Killed kernel by its eigenfunction expansion,
    /// `(|W|·vol A)^{−1} Σ_μ conj(A_μ(x)) A_μ(y) e^{−2π²‖μ‖²t}`, `μ = λ+ρ`.
    pub fn u_spectral(&self, t: f64, x: &CartanVector, y: &CartanVector) -> f64 {
        let model = self.model();
        let rho = model.rho();
        let mut sum = Complex64::new(0.0, 0.0);
        for w in self.weights_for(t).iter() {
            let mu = w.weight_vector + rho;
            let decay = (-2.0 * PI * PI * mu.norm_sq() * t).exp();
            sum += alternating_sum(model, &mu, x).conj() * alternating_sum(model, &mu, y) * decay;
        }
        sum.re / (model.weyl_group().len() as f64 * model.alcove_volume())
    }

    pub(crate) fn u_unchecked(&self, t: f64, x: &CartanVector, y: &CartanVector) -> f64 {
        if t <= self.image_time_limit() {
            self.u_images(t, x, y)
        } else {
            self.u_spectral(t, x, y)
        }
    }

    /// Transition density of Brownian motion killed on `∂A`.
    pub fn u_killed(&self, t: f64, x: &CartanVector, y: &CartanVector) -> Result<f64> {
        self.check_time(t, "time")?;
        self.check_in_alcove(x, 1.0)?;
        self.check_in_alcove(y, 1.0)?;
        Ok(self.u_unchecked(t, x, y))
    }

    /// Character expansion
    /// `π(y)² Σ_λ ch_λ(e^{−x}) ch_λ(e^{y}) e^{−2π²t(‖λ+ρ‖²−‖ρ‖²)}`.
    pub fn q_char(&self, t: f64, x: &CartanVector, y: &CartanVector) -> Result<f64> {
        self.check_time(t, "time")?;
        self.check_in_alcove(x, 1.0)?;
        self.check_in_alcove(y, 1.0)?;
        let model = self.model();
        let minus_x = -*x;
        let mut sum = 0.0;
        for w in self.weights_for(t).iter() {
            let energy = model.weight_energy(&w.weight_vector);
            let term = character(model, w, &minus_x) * character(model, w, y);
            sum += term.re * (-2.0 * PI * PI * t * energy).exp();
        }
        Ok(weyl_denominator(model, y).powi(2) * sum)
    }

    /// Doob transform of the killed kernel by the ground state `π`,
    /// `(π(y)/π(x)) e^{2π²‖ρ‖²t} u_t(x, y)`. A starting point on `∂A` is
    /// handled as a limit from the interior.
    pub fn q_doob(&self, t: f64, x: &CartanVector, y: &CartanVector) -> Result<f64> {
        self.check_time(t, "time")?;
        self.check_in_alcove(x, 1.0)?;
        self.check_in_alcove(y, 1.0)?;
        let model = self.model();
        let pi_y = weyl_denominator(model, y);
        let growth = (2.0 * PI * PI * model.rho().norm_sq() * t).exp();
        self.regularized(x, |p| {
            Ok(pi_y / weyl_denominator(model, p) * growth * self.u_unchecked(t, p, y))
        })
    }

    /// The constant `q_char / q_doob = |W|·vol(A) / 4^{|Φ+|}`.
    pub fn poisson_constant(&self) -> f64 {
        let model = self.model();
        model.weyl_group().len() as f64 * model.alcove_volume()
            / 4f64.powi(model.positive_root_count() as i32)
    }

    /// `∫_A q_doob(t, x, y) dy` by quadrature.
    pub fn q_doob_mass(&self, t: f64, x: &CartanVector) -> Result<f64> {
        if weyl_denominator(self.model(), x) == 0.0 {
            return Err(invalid("mass check needs an interior starting point"));
        }
        self.try_normalize_over_alcove(1.0, |y| self.q_doob(t, x, y))
    }
}
