//! Stochastic exponentials `τ dX = X ∘ dx` solved by the exponential Euler
//! scheme `X_{k+1} = X_k exp(Δx_k / τ)`.

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;

use super::sheet::SheetGrid;
use crate::error::{invalid, Result};
use crate::lie::{CartanVector, GroupElement, GroupModel, SmallUnitary};

/// Largest algebra dimension among the supported models.
const MAX_ALGEBRA_DIM: usize = 8;

/// Points `X_0 = e, X_1, …, X_K` of a solved path on the `s`-grid.
#[derive(Clone, Debug)]
pub struct GroupPath {
    pub points: Vec<GroupElement>,
    pub tau: f64,
}

impl GroupPath {
    pub fn endpoint(&self) -> &GroupElement {
        self.points.last().expect("a path has at least its starting point")
    }

    /// Largest unitarity defect along the path.
    pub fn max_unitarity_defect(&self) -> f64 {
        self.points.iter().map(|p| p.unitarity_defect()).fold(0.0, f64::max)
    }
}

/// Which of the two sheet equations to solve at level `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SheetMode {
    /// `dX = X ∘ d(x_{s,t} + γs)`.
    X,
    /// `t dY = Y ∘ d(x_{s,t} + γst)`.
    Y,
}

/// Orthonormal algebra coordinates of a Cartan element.
pub fn cartan_to_algebra(model: &GroupModel, x: &CartanVector) -> Vec<f64> {
    model.algebra_coords(&model.cartan_embedding(x))
}

fn check_increments(model: &GroupModel, tau: f64, increments: &[f64]) -> Result<usize> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(invalid(format!("level must be positive, got {tau}")));
    }
    let dim = model.algebra_dim();
    if increments.len() % dim != 0 {
        return Err(invalid(format!(
            "{} increment values is not a whole number of {dim}-dimensional steps",
            increments.len()
        )));
    }
    Ok(dim)
}

/// Solves `τ dX = X ∘ dx` from the identity; `increments` is flattened
/// `[step][coordinate]`.
pub fn stochastic_exponential(model: &GroupModel, tau: f64, increments: &[f64]) -> Result<GroupPath> {
    let dim = check_increments(model, tau, increments)?;
    let mut x = GroupElement::identity(model.matrix_dim());
    let mut points = Vec::with_capacity(increments.len() / dim + 1);
    points.push(x.clone());
    let mut step = vec![0.0; dim];
    for cell in increments.chunks_exact(dim) {
        for (s, c) in step.iter_mut().zip(cell) {
            *s = c / tau;
        }
        x = &x * &GroupElement::exp_algebra(model, &step);
        points.push(x.clone());
    }
    Ok(GroupPath { points, tau })
}

fn endpoint_small<U: SmallUnitary>(increments: &[f64], dim: usize, drift: &[f64], tau: f64) -> U {
    let mut x = U::identity();
    let mut step = [0.0; MAX_ALGEBRA_DIM];
    for cell in increments.chunks_exact(dim) {
        for k in 0..dim {
            step[k] = (cell[k] + drift[k]) / tau;
        }
        x = x.compose(&U::exp_algebra(&step[..dim]));
    }
    x
}

/// Endpoint `X_1` of `τ dX = X ∘ d(x + drift·s)`, where `drift_step` is
/// the drift increment per step in algebra coordinates. Only the endpoint
/// is kept, using fixed-size matrices.
pub fn exponential_endpoint(model: &GroupModel, tau: f64, increments: &[f64], drift_step: &[f64]) -> Result<GroupElement> {
    let dim = check_increments(model, tau, increments)?;
    if drift_step.len() != dim {
        return Err(invalid(format!("drift has {} coordinates, expected {dim}", drift_step.len())));
    }
    Ok(match model.matrix_dim() {
        2 => endpoint_small::<Matrix2<Complex64>>(increments, dim, drift_step, tau).to_element(),
        _ => endpoint_small::<Matrix3<Complex64>>(increments, dim, drift_step, tau).to_element(),
    })
}

/// Level and per-step drift (algebra coordinates) of the equation selected
/// by `mode` at level `t`.
pub fn mode_parameters(model: &GroupModel, gamma: &CartanVector, mode: SheetMode, t: f64, ds: f64) -> (f64, Vec<f64>) {
    let g = cartan_to_algebra(model, gamma);
    match mode {
        SheetMode::X => (1.0, g.iter().map(|v| v * ds).collect()),
        SheetMode::Y => (t, g.iter().map(|v| v * t * ds).collect()),
    }
}

/// Solves the sheet equation of `mode` along `s` at grid level `t`.
pub fn simulate_group_sheet(
    model: &GroupModel,
    grid: &SheetGrid,
    gamma: &CartanVector,
    mode: SheetMode,
    t: f64,
) -> Result<GroupPath> {
    let (tau, drift) = mode_parameters(model, gamma, mode, t, grid.ds);
    let mut path = grid.path_increments(t)?;
    for cell in path.chunks_exact_mut(grid.algebra_dim) {
        for (c, d) in cell.iter_mut().zip(&drift) {
            *c += d;
        }
    }
    stochastic_exponential(model, tau, &path)
}

/// Endpoint of [`simulate_group_sheet`] without storing the path.
pub fn simulate_endpoint(
    model: &GroupModel,
    grid: &SheetGrid,
    gamma: &CartanVector,
    mode: SheetMode,
    t: f64,
) -> Result<GroupElement> {
    let (tau, drift) = mode_parameters(model, gamma, mode, t, grid.ds);
    exponential_endpoint(model, tau, &grid.path_increments(t)?, &drift)
}
