//! Group elements of SU(2) and SU(3), exponentials and orbit coordinates.
//!
//! [`GroupElement`] is the general, heap-backed representation. Simulation
//! hot loops use [`SmallUnitary`], implemented for the fixed-size nalgebra
//! matrices, with closed-form exponentials: the Pauli formula for SU(2) and
//! the Cayley–Hamilton form of Morningstar and Peardon for SU(3).

use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_complex::Complex64;

use super::cartan::CartanVector;
use super::model::GroupModel;
use super::weyl::fold_to_alcove;
use crate::error::{invalid, Error, Result};

const UNITARY_TOL: f64 = 1e-10;

/// A special unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    matrix: DMatrix<Complex64>,
}

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    /// Wraps `matrix` after checking unitarity and `det = 1` to `1e-10`.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() || !(2..=3).contains(&matrix.nrows()) {
            return Err(invalid(format!(
                "group elements are 2×2 or 3×3, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let g = Self { matrix };
        let defect = g.unitarity_defect();
        let det = g.matrix.determinant();
        if defect > UNITARY_TOL || (det - Complex64::new(1.0, 0.0)).norm() > UNITARY_TOL {
            return Err(invalid(format!(
                "matrix is not special unitary (‖U*U − I‖ = {defect:.3e}, det = {det})"
            )));
        }
        Ok(g)
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<Complex64>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// `max |(U*U − I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let p = self.matrix.adjoint() * &self.matrix - DMatrix::<Complex64>::identity(n, n);
        p.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `exp(2iπ Σ c_k T_k)` for orthonormal algebra coordinates `c`.
    pub fn exp_algebra(model: &GroupModel, coords: &[f64]) -> Self {
        assert_eq!(coords.len(), model.algebra_dim());
        match model.matrix_dim() {
            2 => Matrix2::<Complex64>::exp_algebra(coords).to_element(),
            _ => Matrix3::<Complex64>::exp_algebra(coords).to_element(),
        }
    }

    /// Principal logarithm, an anti-Hermitian matrix with eigenvalues in
    /// `i(−π, π]`.
    pub fn principal_log(&self) -> Result<DMatrix<Complex64>> {
        let n = self.dim();
        let schur = self
            .matrix
            .clone()
            .try_schur(1e-15, 10_000)
            .ok_or_else(|| Error::Eigen("Schur decomposition did not converge".into()))?;
        let (q, t) = schur.unpack();
        let mut d = DMatrix::<Complex64>::zeros(n, n);
        for j in 0..n {
            d[(j, j)] = Complex64::new(0.0, t[(j, j)].arg());
        }
        Ok(&q * d * q.adjoint())
    }

    /// Eigenvalue angles divided by `2π`, principal branch, adjusted to sum
    /// to zero.
    pub fn diagonal_coordinates(&self) -> Result<Vec<f64>> {
        match self.dim() {
            2 => Ok(Matrix2::from_group_element(self).diagonal_coordinates()?[..2].to_vec()),
            _ => Ok(Matrix3::from_group_element(self).diagonal_coordinates()?.to_vec()),
        }
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

/// `exp(x)` for `x` in the Cartan subalgebra: `diag(exp(2iπ h_j))`.
pub fn exp_cartan(model: &GroupModel, x: &CartanVector) -> GroupElement {
    let h = model.to_diagonal(x);
    let n = model.matrix_dim();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, 2.0 * PI * h[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    GroupElement::from_matrix_unchecked(m)
}

/// The unique `a ∈ A` with `u` conjugate to `exp(a)`.
pub fn orbit_coordinate(model: &GroupModel, u: &GroupElement) -> Result<CartanVector> {
    if u.dim() != model.matrix_dim() {
        return Err(invalid(format!(
            "{}×{} matrix for model {}",
            u.dim(),
            u.dim(),
            model.name()
        )));
    }
    let h = u.diagonal_coordinates()?;
    Ok(fold_to_alcove(model, &model.from_diagonal(&h), 1.0)?.0)
}

/// Fixed-size special unitary matrices used in simulation loops.
pub trait SmallUnitary: Copy + Send + Sync + 'static {
    const MATRIX_DIM: usize;

    fn identity() -> Self;

    /// `exp(2iπ Σ c_k T_k)` in the orthonormal algebra basis of the model.
    fn exp_algebra(coords: &[f64]) -> Self;

    fn compose(&self, rhs: &Self) -> Self;

    fn adjoint(&self) -> Self;

    /// Eigenvalue angles over `2π` summing to zero; unused slots are zero.
    fn diagonal_coordinates(&self) -> Result<[f64; 3]>;

    fn to_element(&self) -> GroupElement;

    fn from_group_element(g: &GroupElement) -> Self;

    /// Orbit coordinate in the alcove at level 1.
    fn orbit(&self, model: &GroupModel) -> Result<CartanVector> {
        let h = self.diagonal_coordinates()?;
        Ok(fold_to_alcove(model, &model.from_diagonal(&h[..Self::MATRIX_DIM]), 1.0)?.0)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `sin(w)/w`, with a series near zero.
fn sinc(w: f64) -> f64 {
    if w.abs() < 0.05 {
        let w2 = w * w;
        1.0 - w2 / 6.0 * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0))
    } else {
        w.sin() / w
    }
}

/// Shifts principal-branch angles (over `2π`) so that they sum to zero.
fn balance(h: &mut [f64]) {
    let excess = h.iter().sum::<f64>().round();
    if excess != 0.0 {
        let idx = if excess > 0.0 {
            (0..h.len()).max_by(|&a, &b| h[a].total_cmp(&h[b])).unwrap()
        } else {
            (0..h.len()).min_by(|&a, &b| h[a].total_cmp(&h[b])).unwrap()
        };
        h[idx] -= excess;
    }
}

impl SmallUnitary for Matrix2<Complex64> {
    const MATRIX_DIM: usize = 2;

    fn identity() -> Self {
        Matrix2::identity()
    }

    fn exp_algebra(coords: &[f64]) -> Self {
        // 2iπ Σ c_k T_k = i (a3 σ3 + a1 σ1 + a2 σ2) with a = √2 π c.
        let k = std::f64::consts::SQRT_2 * PI;
        let (a3, a1, a2) = (k * coords[0], k * coords[1], k * coords[2]);
        let r = (a1 * a1 + a2 * a2 + a3 * a3).sqrt();
        let (cr, s) = (r.cos(), sinc(r));
        Matrix2::new(
            c(cr, s * a3),
            c(s * a2, s * a1),
            c(-s * a2, s * a1),
            c(cr, -s * a3),
        )
    }

    #[inline]
    fn compose(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn adjoint(&self) -> Self {
        Matrix2::adjoint(self)
    }

    fn diagonal_coordinates(&self) -> Result<[f64; 3]> {
        // U = cos φ I + i sin φ (n·σ): eigenvalues e^{±iφ}, φ ∈ [0, π].
        let a = self[(0, 0)];
        let b = self[(0, 1)];
        let phi = (a.im * a.im + b.norm_sqr()).sqrt().atan2(a.re);
        let h = phi / (2.0 * PI);
        Ok([h, -h, 0.0])
    }

    fn to_element(&self) -> GroupElement {
        GroupElement::from_matrix_unchecked(DMatrix::from_column_slice(2, 2, self.as_slice()))
    }

    fn from_group_element(g: &GroupElement) -> Self {
        Matrix2::from_column_slice(g.matrix().as_slice())
    }
}

impl SmallUnitary for Matrix3<Complex64> {
    const MATRIX_DIM: usize = 3;

    fn identity() -> Self {
        Matrix3::identity()
    }

    fn exp_algebra(coords: &[f64]) -> Self {
        // Q = 2π Σ c_k T_k (Hermitian, traceless) in the basis order of the
        // model: two diagonal generators, then for each pair i<j the
        // symmetric and antisymmetric off-diagonal generators.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let tp = 2.0 * PI;
        let d0 = tp * coords[0] * s;
        let d1 = tp * coords[1] / 6f64.sqrt();
        let off = |k: usize| c(tp * s * coords[k], -tp * s * coords[k + 1]);
        let q01 = off(2);
        let q02 = off(4);
        let q12 = off(6);
        let q = Matrix3::new(
            c(d0 + d1, 0.0),
            q01,
            q02,
            q01.conj(),
            c(-d0 + d1, 0.0),
            q12,
            q02.conj(),
            q12.conj(),
            c(-2.0 * d1, 0.0),
        );
        exp_i_hermitian3(&q)
    }

    #[inline]
    fn compose(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn adjoint(&self) -> Self {
        Matrix3::adjoint(self)
    }

    fn diagonal_coordinates(&self) -> Result<[f64; 3]> {
        let t = self
            .try_schur(1e-15, 10_000)
            .ok_or_else(|| Error::Eigen("Schur decomposition did not converge".into()))?
            .unpack()
            .1;
        let mut h = [0.0; 3];
        for (j, hj) in h.iter_mut().enumerate() {
            let z = t[(j, j)];
            if !z.is_finite() || (z.norm() - 1.0).abs() > 1e-6 {
                return Err(Error::Eigen(format!("eigenvalue {z} off the unit circle")));
            }
            *hj = z.arg() / (2.0 * PI);
        }
        balance(&mut h);
        Ok(h)
    }

    fn to_element(&self) -> GroupElement {
        GroupElement::from_matrix_unchecked(DMatrix::from_column_slice(3, 3, self.as_slice()))
    }

    fn from_group_element(g: &GroupElement) -> Self {
        Matrix3::from_column_slice(g.matrix().as_slice())
    }
}

/// `exp(iQ)` for Hermitian traceless `Q` as `f0 + f1 Q + f2 Q²`.
fn exp_i_hermitian3(q: &Matrix3<Complex64>) -> Matrix3<Complex64> {
    let q2 = q * q;
    let c1 = 0.5 * q2.trace().re;
    if c1 < 1e-10 {
        // ‖Q‖ < 1e-5: the Taylor remainder after Q⁴ is below 1e-25.
        let q3 = q2 * q;
        let q4 = q2 * q2;
        return Matrix3::identity() + q * c(0.0, 1.0) - q2 * c(0.5, 0.0) - q3 * c(0.0, 1.0 / 6.0) + q4 * c(1.0 / 24.0, 0.0);
    }
    let c0_signed = (q2 * q).trace().re / 3.0;
    let negative = c0_signed < 0.0;
    let c0 = c0_signed.abs();
    let c0_max = 2.0 * (c1 / 3.0).powf(1.5);
    let theta = (c0 / c0_max).min(1.0).acos();
    let u = (c1 / 3.0).sqrt() * (theta / 3.0).cos();
    let w = c1.sqrt() * (theta / 3.0).sin();
    let xi = sinc(w);
    let (u2, w2) = (u * u, w * w);
    let e2iu = Complex64::from_polar(1.0, 2.0 * u);
    let emiu = Complex64::from_polar(1.0, -u);
    let cw = w.cos();
    let h0 = e2iu * (u2 - w2) + emiu * c(8.0 * u2 * cw, 2.0 * u * (3.0 * u2 + w2) * xi);
    let h1 = e2iu * (2.0 * u) - emiu * c(2.0 * u * cw, -(3.0 * u2 - w2) * xi);
    let h2 = e2iu - emiu * c(cw, 3.0 * u * xi);
    let denom = 9.0 * u2 - w2;
    let (mut f0, mut f1, mut f2) = (h0 / denom, h1 / denom, h2 / denom);
    if negative {
        f0 = f0.conj();
        f1 = -f1.conj();
        f2 = f2.conj();
    }
    Matrix3::identity() * f0 + q * f1 + q2 * f2
}
