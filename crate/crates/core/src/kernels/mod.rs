//! Closed-form densities on alcoves and affine Weyl chambers.
//!
//! Everything here is evaluated through a [`Kernels`] context, which owns the
//! group model, the truncation parameters and a cached quadrature rule. The
//! infinite sums over the extended Weyl group are truncated adaptively: only
//! lattice points within `lattice_radius` standard deviations of the peak of
//! the summand are visited.
//!
//! Points where the Weyl denominator of the drift vanishes (for instance a
//! drift of zero) are handled by evaluating along the segment towards the
//! barycenter of the alcove and extrapolating to the endpoint.

mod conditioned;
mod heat;
mod quadrature;
mod theta;

use std::borrow::Cow;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lie::{weyl_denominator, CartanVector, DominantWeight, GroupModel};

pub use conditioned::EntranceLaw;
pub use quadrature::AlcoveQuadrature;
pub use theta::{affine_translation, AffineWeight};

/// Truncation and quadrature parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelConfig {
    /// Truncation radius of lattice sums, in standard deviations of the
    /// Gaussian summand.
    pub lattice_radius: f64,
    /// Largest `‖λ+ρ‖² − ‖ρ‖²` kept in character and eigenfunction
    /// expansions. Raised automatically at small times.
    pub weight_energy_cutoff: f64,
    /// Gauss–Legendre points per dimension.
    pub quadrature_points: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            lattice_radius: 9.0,
            weight_energy_cutoff: 30.0,
            quadrature_points: 64,
        }
    }
}

impl KernelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lattice_radius > 0.0) {
            return Err(Error::Config("lattice_radius must be positive".into()));
        }
        if !(self.weight_energy_cutoff > 0.0) {
            return Err(Error::Config("weight_energy_cutoff must be positive".into()));
        }
        if self.quadrature_points < 16 {
            return Err(Error::Config("quadrature_points must be at least 16".into()));
        }
        Ok(())
    }
}

/// A point `(t, x)` of space-time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceTimePoint {
    pub t: f64,
    pub x: CartanVector,
}

impl SpaceTimePoint {
    pub fn new(t: f64, x: CartanVector) -> Self {
        Self { t, x }
    }

    /// Membership in the affine Weyl chamber `{(t, x) : x ∈ A_t}`.
    pub fn in_chamber(&self, model: &GroupModel, tol: f64) -> bool {
        self.t >= 0.0 && model.in_alcove(&self.x, self.t, tol)
    }
}

/// Tolerance for alcove membership checks on kernel arguments.
const DOMAIN_TOL: f64 = 1e-10;

/// Below this `|π|` a drift or starting point is treated as singular.
const SINGULAR_DENOMINATOR: f64 = 1e-6;

/// Evaluation context for all kernels of a given model.
#[derive(Clone, Debug)]
pub struct Kernels {
    model: Arc<GroupModel>,
    cfg: KernelConfig,
    weights: Vec<DominantWeight>,
    quadrature: AlcoveQuadrature,
}

impl Kernels {
    pub fn new(model: impl Into<Arc<GroupModel>>, cfg: KernelConfig) -> Result<Self> {
        cfg.validate()?;
        let model = model.into();
        let weights = model.enumerate_dominant_weights(cfg.weight_energy_cutoff);
        let quadrature = AlcoveQuadrature::new(cfg.quadrature_points)?;
        Ok(Self {
            model,
            cfg,
            weights,
            quadrature,
        })
    }

    /// Context with [`KernelConfig::default`].
    pub fn with_defaults(model: impl Into<Arc<GroupModel>>) -> Self {
        Self::new(model, KernelConfig::default()).expect("default configuration is valid")
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn shared_model(&self) -> Arc<GroupModel> {
        Arc::clone(&self.model)
    }

    pub fn config(&self) -> &KernelConfig {
        &self.cfg
    }

    pub fn quadrature(&self) -> &AlcoveQuadrature {
        &self.quadrature
    }

    /// Dominant weights needed at time `t`: terms with
    /// `exp(−2π² t E) < e^{−40}` are dropped.
    pub(crate) fn weights_for(&self, t: f64) -> Cow<'_, [DominantWeight]> {
        let needed = 40.0 / (2.0 * PI * PI * t);
        if needed <= self.cfg.weight_energy_cutoff {
            Cow::Borrowed(&self.weights)
        } else {
            Cow::Owned(self.model.enumerate_dominant_weights(needed))
        }
    }

    pub(crate) fn check_time(&self, t: f64, what: &str) -> Result<()> {
        if t > 0.0 && t.is_finite() {
            Ok(())
        } else {
            Err(invalid(format!("{what} must be positive and finite, got {t}")))
        }
    }

    pub(crate) fn check_in_alcove(&self, x: &CartanVector, level: f64) -> Result<()> {
        if x.rank() != self.model.rank() {
            return Err(invalid(format!(
                "point of rank {} for model {}",
                x.rank(),
                self.model.name()
            )));
        }
        if self.model.in_alcove(x, level, DOMAIN_TOL * level.max(1.0)) {
            Ok(())
        } else {
            Err(Error::OutsideAlcove {
                point: x.coords().to_vec(),
                level,
            })
        }
    }

    /// `f(p)` if `π(p)` is safely nonzero; otherwise the limit of `f` along
    /// the line from `p` towards the barycenter of `A`, extrapolated from
    /// symmetric means at three step sizes.
    pub(crate) fn regularized<F>(&self, p: &CartanVector, f: F) -> Result<f64>
    where
        F: Fn(&CartanVector) -> Result<f64>,
    {
        if weyl_denominator(&self.model, p).abs() >= SINGULAR_DENOMINATOR {
            return f(p);
        }
        // Both factors of the ratio are odd across the wall, so it extends
        // smoothly outside A and the symmetric mean is even in h.
        let towards = self.model.alcove_barycenter() - *p;
        let d = towards * (1.0 / towards.norm());
        let h = 1e-2;
        let mean = |h: f64| -> Result<f64> { Ok(0.5 * (f(&(*p + d * h))? + f(&(*p - d * h))?)) };
        let (g1, g2, g4) = (mean(h)?, mean(h / 2.0)?, mean(h / 4.0)?);
        let r1 = (4.0 * g2 - g1) / 3.0;
        let r2 = (4.0 * g4 - g2) / 3.0;
        Ok((16.0 * r2 - r1) / 15.0)
    }
}

#[inline]
pub(crate) fn gaussian_norm(t: f64, rank: usize) -> f64 {
    (2.0 * PI * t).powf(-(rank as f64) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(KernelConfig::default().validate().is_ok());
        let bad = KernelConfig {
            quadrature_points: 8,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = KernelConfig {
            lattice_radius: 0.0,
            ..Default::default()
        };
        assert!(Kernels::new(GroupModel::su2(), bad).is_err());
    }

    #[test]
    fn regularized_limit_of_smooth_ratio() {
        let k = Kernels::with_defaults(GroupModel::su2());
        // sin(3πα)/sin(πα) → 3 at α = 0.
        let v = k
            .regularized(&CartanVector::zeros(1), |p| {
                let a = k.model().root_values(p)[0];
                Ok((3.0 * PI * a).sin() / (PI * a).sin())
            })
            .unwrap();
        assert!((v - 3.0).abs() < 1e-9);
    }

    #[test]
    fn chamber_membership() {
        let m = GroupModel::su2();
        let p = SpaceTimePoint::new(2.0, CartanVector::new(&[1.0]));
        assert!(p.in_chamber(&m, 1e-12));
        assert!(!SpaceTimePoint::new(1.0, CartanVector::new(&[1.0])).in_chamber(&m, 1e-12));
    }
}
