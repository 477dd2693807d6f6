//! Space-time Brownian motion killed on the boundary of the affine Weyl
//! chamber, and its Doob transform by `Ψ_γ`.

use super::{gaussian_norm, Kernels};
use crate::error::{invalid, Error, Result};
use crate::lie::{for_each_lattice_point, weyl_denominator, CartanVector};

impl Kernels {
    /// Transition density from `(r, x)` to `(t, y)` of space-time Brownian
    /// motion without drift, killed when it leaves the chamber:
    /// `Σ_{w∈Ω} det(w) e^{−(‖y‖² − ‖t w(y/t)‖²)/2t} p_{t−r}(x, t w(y/t))`.
    pub fn w0_kernel(&self, r: f64, x: &CartanVector, t: f64, y: &CartanVector) -> Result<f64> {
        self.check_time(r, "start time")?;
        if !(t > r) {
            return Err(invalid(format!("end time {t} must exceed start time {r}")));
        }
        self.check_in_alcove(x, r)?;
        self.check_in_alcove(y, t)?;
        Ok(self.w0_unchecked(r, x, t, y))
    }

    fn w0_unchecked(&self, r: f64, x: &CartanVector, t: f64, y: &CartanVector) -> f64 {
        let model = self.model();
        let dt = t - r;
        // As a function of z = t·w(y/t) the summand is a Gaussian centred at
        // x·t/r; in terms of the lattice vector β it has width √((t−r)/(tr)).
        let radius = self.cfg.lattice_radius * (dt / (t * r)).sqrt();
        let y2 = y.norm_sq();
        let mut sum = 0.0;
        for v in model.weyl_group() {
            let vy = v.apply(y);
            let center = *x * (1.0 / r) - vy * (1.0 / t);
            let mut part = 0.0;
            for_each_lattice_point(model, &center, radius, 1.0, |beta| {
                let z = vy + beta * t;
                part += (-(y2 - z.norm_sq()) / (2.0 * t) - (*x - z).norm_sq() / (2.0 * dt)).exp();
            });
            sum += v.det * part;
        }
        gaussian_norm(dt, model.rank()) * sum
    }

    /// Transition density `s^γ` of the conditioned space-time process from
    /// `(r, x)` to `(t, y)`, `0 < r < t`:
    /// `Ψ_γ(t, y)/Ψ_γ(r, x) · e^{(γ|y−x) − ‖γ‖²(t−r)/2} · w⁰`.
    pub fn transition_density(
        &self,
        gamma: &CartanVector,
        r: f64,
        x: &CartanVector,
        t: f64,
        y: &CartanVector,
    ) -> Result<f64> {
        let start = self.big_psi(gamma, r, x)?;
        if !(start > 0.0) {
            return Err(Error::DegenerateStart);
        }
        let end = self.big_psi(gamma, t, y)?;
        let drift = (gamma.dot(&(*y - *x)) - 0.5 * gamma.norm_sq() * (t - r)).exp();
        Ok(end / start * drift * self.w0_stable(r, x, t, y)?)
    }

    /// `w⁰` through the killed kernel at time `1/r − 1/t` when the direct
    /// lattice sum would cancel badly:
    /// `w⁰ = (rt)^{−n/2} e^{‖x‖²/2r − ‖y‖²/2t} u_{1/r−1/t}(y/t, x/r)`.
    fn w0_stable(&self, r: f64, x: &CartanVector, t: f64, y: &CartanVector) -> Result<f64> {
        let s = 1.0 / r - 1.0 / t;
        if s <= self.image_time_limit() {
            return self.w0_kernel(r, x, t, y);
        }
        self.check_in_alcove(x, r)?;
        self.check_in_alcove(y, t)?;
        let n = self.model().rank() as f64;
        let u = self.u_unchecked(s, &(*y * (1.0 / t)), &(*x * (1.0 / r)));
        Ok((r * t).powf(-n / 2.0) * (x.norm_sq() / (2.0 * r) - y.norm_sq() / (2.0 * t)).exp() * u)
    }

    /// Entrance law of the conditioned process at time `t`, started from
    /// the tip `(0, 0)` of the chamber. Builds an [`EntranceLaw`]; use that
    /// directly for repeated evaluations.
    pub fn entrance_density(&self, gamma: &CartanVector, t: f64, y: &CartanVector) -> Result<f64> {
        EntranceLaw::new(self, gamma, t)?.density(y)
    }
}

/// The density `C_t Ψ_γ(t, y) π(y/t) e^{−‖y−γt‖²/2t}` on `A_t`, with the
/// normalizing constant computed once.
#[derive(Clone, Debug)]
pub struct EntranceLaw {
    kernels: Kernels,
    gamma: CartanVector,
    t: f64,
    normalizer: f64,
    node_maximum: f64,
}

impl EntranceLaw {
    pub fn new(kernels: &Kernels, gamma: &CartanVector, t: f64) -> Result<Self> {
        kernels.check_time(t, "time")?;
        kernels.check_in_alcove(gamma, 1.0)?;
        let mut law = Self {
            kernels: kernels.clone(),
            gamma: *gamma,
            t,
            normalizer: 1.0,
            node_maximum: 0.0,
        };
        let mut peak: f64 = 0.0;
        let mass = kernels.try_normalize_over_alcove(t, |y| {
            let v = law.unnormalized(y)?;
            peak = peak.max(v);
            Ok(v)
        })?;
        if !(mass > 0.0) {
            return Err(Error::DegenerateStart);
        }
        law.normalizer = 1.0 / mass;
        law.node_maximum = peak / mass;
        Ok(law)
    }

    pub fn gamma(&self) -> &CartanVector {
        &self.gamma
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn kernels(&self) -> &Kernels {
        &self.kernels
    }

    /// The constant `C_t`.
    pub fn normalizing_constant(&self) -> f64 {
        self.normalizer
    }

    /// Largest normalized density over the quadrature nodes.
    pub fn node_maximum(&self) -> f64 {
        self.node_maximum
    }

    /// `Ψ_γ(t, y) π(y/t) e^{−‖y−γt‖²/2t}`.
    pub fn unnormalized(&self, y: &CartanVector) -> Result<f64> {
        let k = &self.kernels;
        let t = self.t;
        let psi = k.big_psi(&self.gamma, t, y)?;
        let pi = weyl_denominator(k.model(), &(*y * (1.0 / t)));
        Ok(psi * pi * (-(*y - self.gamma * t).norm_sq() / (2.0 * t)).exp())
    }

    pub fn density(&self, y: &CartanVector) -> Result<f64> {
        Ok(self.normalizer * self.unnormalized(y)?)
    }
}
