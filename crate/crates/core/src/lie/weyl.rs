//! Extended affine Weyl group: the finite Weyl group composed with
//! coroot-lattice translations, its action on the Cartan subalgebra and the
//! folding of arbitrary points into the alcove `A_τ`.

use super::cartan::{CartanVector, MAX_RANK};
use super::model::GroupModel;
use crate::error::{Error, Result};

/// `x ↦ R·x + level·v` with `R` in the Weyl group and `v` in the coroot lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedWeylOp {
    pub weyl_part: [[f64; MAX_RANK]; MAX_RANK],
    pub det: f64,
    pub translation: CartanVector,
}

impl ExtendedWeylOp {
    pub fn identity(rank: usize) -> Self {
        let mut m = [[0.0; MAX_RANK]; MAX_RANK];
        for (i, row) in m.iter_mut().enumerate().take(rank) {
            row[i] = 1.0;
        }
        Self {
            weyl_part: m,
            det: 1.0,
            translation: CartanVector::zeros(rank),
        }
    }

    /// Action at level 1.
    #[inline]
    pub fn apply(&self, x: &CartanVector) -> CartanVector {
        x.transform(&self.weyl_part) + self.translation
    }

    /// Action on `𝔱` with translations scaled by `level`.
    #[inline]
    pub fn apply_at_level(&self, x: &CartanVector, level: f64) -> CartanVector {
        x.transform(&self.weyl_part) + self.translation * level
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let rank = self.translation.rank();
        let mut m = [[0.0; MAX_RANK]; MAX_RANK];
        for (i, row) in m.iter_mut().enumerate().take(rank) {
            for (j, entry) in row.iter_mut().enumerate().take(rank) {
                *entry = (0..rank)
                    .map(|k| self.weyl_part[i][k] * other.weyl_part[k][j])
                    .sum();
            }
        }
        Self {
            weyl_part: m,
            det: self.det * other.det,
            translation: other.translation.transform(&self.weyl_part) + self.translation,
        }
    }

    /// Coordinates of the translation in the simple-coroot basis, rounded.
    pub fn translation_coroot(&self, model: &GroupModel) -> Vec<i64> {
        let c = model.coroot_coordinates(&self.translation);
        c[..model.rank()].iter().map(|v| v.round() as i64).collect()
    }

    /// Whether the translation lies in `Q^∨` (up to `1e-9`).
    pub fn is_lattice_translation(&self, model: &GroupModel) -> bool {
        let c = model.coroot_coordinates(&self.translation);
        c[..model.rank()].iter().all(|v| (v - v.round()).abs() < 1e-9)
    }

    pub(crate) fn reflection(model: &GroupModel, root: &CartanVector) -> Self {
        let rank = model.rank();
        let coroot = *root * (2.0 / root.norm_sq());
        let mut m = [[0.0; MAX_RANK]; MAX_RANK];
        for (i, row) in m.iter_mut().enumerate().take(rank) {
            for (j, entry) in row.iter_mut().enumerate().take(rank) {
                *entry = if i == j { 1.0 } else { 0.0 } - coroot[i] * root[j];
            }
        }
        Self {
            weyl_part: m,
            det: -1.0,
            translation: CartanVector::zeros(rank),
        }
    }

    fn translation_by(model: &GroupModel, coroot_coords: &[i64]) -> Self {
        let c: Vec<f64> = coroot_coords.iter().map(|&k| k as f64).collect();
        let mut op = Self::identity(model.rank());
        op.translation = model.from_coroot_coordinates(&c);
        op
    }
}

/// Visits every point `v` of `scale·Q^∨` with `‖v − center‖ ≤ radius`.
pub fn for_each_lattice_point<F: FnMut(CartanVector)>(
    model: &GroupModel,
    center: &CartanVector,
    radius: f64,
    scale: f64,
    mut visit: F,
) {
    let rank = model.rank();
    let c0 = model.coroot_coordinates(&(*center * (1.0 / scale)));
    let r = radius / scale;
    let mut lo = [0i64; MAX_RANK];
    let mut hi = [0i64; MAX_RANK];
    for i in 0..rank {
        // |c_i| ≤ r·‖ω_i‖ for lattice points within distance r.
        let half = r * model.fundamental_weights()[i].norm();
        lo[i] = (c0[i] - half).ceil() as i64;
        hi[i] = (c0[i] + half).floor() as i64;
    }
    let coroots = model.simple_coroots();
    let r2 = radius * radius;
    match rank {
        1 => {
            for a in lo[0]..=hi[0] {
                let v = coroots[0] * (a as f64 * scale);
                if (v - *center).norm_sq() <= r2 {
                    visit(v);
                }
            }
        }
        _ => {
            for a in lo[0]..=hi[0] {
                for b in lo[1]..=hi[1] {
                    let v = (coroots[0] * a as f64 + coroots[1] * b as f64) * scale;
                    if (v - *center).norm_sq() <= r2 {
                        visit(v);
                    }
                }
            }
        }
    }
}

/// All `w·t_v` with `w` in the Weyl group and `v ∈ Q^∨`, `‖v‖ ≤ radius`.
pub fn extended_weyl_ball(model: &GroupModel, radius: f64) -> Vec<ExtendedWeylOp> {
    let mut out = Vec::new();
    let origin = CartanVector::zeros(model.rank());
    for_each_lattice_point(model, &origin, radius.max(0.0), 1.0, |v| {
        for w in model.weyl_group() {
            out.push(ExtendedWeylOp {
                weyl_part: w.matrix,
                det: w.det,
                translation: v,
            });
        }
    });
    out
}

/// Folds `x` into `A_τ` under the Weyl group and `τ·Q^∨`; returns the folded
/// point `a` and the operation with `op.apply_at_level(x, τ) = a`.
pub fn fold_to_alcove(
    model: &GroupModel,
    x: &CartanVector,
    tau: f64,
) -> Result<(CartanVector, ExtendedWeylOp)> {
    if !(tau > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "fold_to_alcove needs τ > 0 and a finite point, got τ={tau}, x={x:?}"
        )));
    }
    let rank = model.rank();

    // Nearest point of τ·Q^∨: the Delaunay cells of the A_n root lattices
    // (n ≤ 2) are simplices spanned by corners of the coroot-basis cell.
    let c = model.coroot_coordinates(&(*x * (1.0 / tau)));
    let mut best: Option<(f64, Vec<i64>)> = None;
    let corners = 1usize << rank;
    for mask in 0..corners {
        let cand: Vec<i64> = (0..rank)
            .map(|i| c[i].floor() as i64 + ((mask >> i) & 1) as i64)
            .collect();
        let v = model.from_coroot_coordinates(&cand.iter().map(|&k| k as f64).collect::<Vec<_>>());
        let d = (*x - v * tau).norm_sq();
        if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
            best = Some((d, cand));
        }
    }
    let shift: Vec<i64> = best.expect("at least one corner").1.iter().map(|k| -k).collect();
    let mut op = ExtendedWeylOp::translation_by(model, &shift);
    let mut a = op.apply_at_level(x, tau);

    let tol = 1e-14 * tau.max(1.0);
    let theta = model.highest_root();
    let max_iter = 10 * rank;
    for _ in 0..=max_iter {
        let violated = model
            .simple_roots()
            .iter()
            .find(|alpha| alpha.dot(&a) < -tol);
        let step = if let Some(alpha) = violated {
            ExtendedWeylOp::reflection(model, alpha)
        } else if theta.dot(&a) > tau + tol {
            // Affine reflection in the wall θ = τ: a ↦ s_θ(a) + τθ^∨.
            let mut s0 = ExtendedWeylOp::reflection(model, &theta);
            s0.translation = model.highest_coroot();
            s0
        } else {
            return Ok((a, op));
        };
        a = step.apply_at_level(&a, tau);
        op = step.compose(&op);
    }
    Err(Error::FoldNonConvergence(max_iter))
}
