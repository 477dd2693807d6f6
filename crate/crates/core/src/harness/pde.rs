//! Finite-difference residuals of space-time equations.

use crate::error::{invalid, Result};
use crate::lie::{CartanVector, GroupModel};

/// Which operator to apply.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Generator {
    /// `∂_t + (γ|∇) + ½Δ`, annihilating space-time harmonic functions of
    /// Brownian motion with drift `γ`.
    SpaceTime,
    /// `∂_t − ½Δ`, the forward heat operator.
    Heat,
}

/// Fourth-order central first and second differences of `g` at 0 with
/// step `h`.
fn differences<G: FnMut(f64) -> f64>(mut g: G, h: f64) -> (f64, f64) {
    let (m2, m1, z, p1, p2) = (g(-2.0 * h), g(-h), g(0.0), g(h), g(2.0 * h));
    let first = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let second = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
    (first, second)
}

/// Residual of `generator` applied to `f` at `(t, x)`, with central
/// differences of step `h` in every direction (five-point stencils).
pub fn pde_residual<F>(f: F, t: f64, x: &CartanVector, gamma: &CartanVector, h: f64, generator: Generator) -> Result<f64>
where
    F: Fn(f64, &CartanVector) -> f64,
{
    if !(h > 0.0) || t <= 2.0 * h {
        return Err(invalid(format!("time {t} is within 2h = {} of the origin", 2.0 * h)));
    }
    let n = x.rank();
    let (dt, _) = differences(|s| f(t + s, x), h);
    let mut drift = 0.0;
    let mut laplace = 0.0;
    for i in 0..n {
        let mut e = [0.0; 2];
        e[i] = 1.0;
        let e = CartanVector::new(&e[..n]);
        let (d1, d2) = differences(|s| f(t, &(*x + e * s)), h);
        drift += gamma[i] * d1;
        laplace += d2;
    }
    Ok(match generator {
        Generator::SpaceTime => dt + drift + 0.5 * laplace,
        Generator::Heat => dt - 0.5 * laplace,
    })
}

/// [`pde_residual`] restricted to points of the chamber whose distance to
/// `∂A_t` (in root values) exceeds the stencil reach.
pub fn pde_residual_in_chamber<F>(
    model: &GroupModel,
    f: F,
    t: f64,
    x: &CartanVector,
    gamma: &CartanVector,
    h: f64,
) -> Result<f64>
where
    F: Fn(f64, &CartanVector) -> f64,
{
    // A root value changes by at most ‖α‖·2h = 2√2·h over the stencil, and
    // the level by 2h.
    let reach = 2.0 * std::f64::consts::SQRT_2 * h + 2.0 * h;
    if model.alcove_margin(x, t) <= reach {
        return Err(invalid(format!("point {x:?} is within {reach} of the boundary of A_{t}")));
    }
    pde_residual(f, t, x, gamma, h, Generator::SpaceTime)
}
