//! Root data and the defining representation of SU(2) and SU(3).
//!
//! Real roots are used throughout: `[H, X] = 2iπ α(H) X`. With the Cartan
//! subalgebra realized as `diag(2iπ h_1, …, 2iπ h_n)`, `Σ h_j = 0`, the root
//! `e_i − e_j` evaluates to `h_i − h_j` and the invariant product
//! `(A|B) = −tr(AB)/(4π²)` restricts to the Euclidean product on `h`, which
//! gives `(θ|θ) = 2`. Metric coordinates on the Cartan subalgebra are the
//! coordinates of `h` in an orthonormal frame of the sum-zero hyperplane.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::cartan::{CartanVector, MAX_RANK};
use crate::error::{invalid, Error, Result};

/// An element of the finite Weyl group, acting on metric coordinates.
#[derive(Clone, Debug)]
pub struct WeylElement {
    /// Row-major `rank × rank` orthogonal matrix.
    pub matrix: [[f64; MAX_RANK]; MAX_RANK],
    /// Determinant, `+1.0` or `-1.0`.
    pub det: f64,
    /// The permutation of diagonal entries realizing this element.
    pub permutation: Vec<usize>,
}

impl WeylElement {
    #[inline]
    pub fn apply(&self, x: &CartanVector) -> CartanVector {
        x.transform(&self.matrix)
    }
}

/// A dominant integral weight, labelled by its values on the simple coroots.
#[derive(Clone, Debug, PartialEq)]
pub struct DominantWeight {
    pub coroot_values: Vec<u32>,
    pub weight_vector: CartanVector,
}

/// Root datum, metric and defining representation of SU(n), n ∈ {2, 3}.
#[derive(Clone, Debug)]
pub struct GroupModel {
    matrix_dim: usize,
    rank: usize,
    simple_roots: Vec<CartanVector>,
    simple_coroots: Vec<CartanVector>,
    positive_roots: Vec<CartanVector>,
    highest_root: CartanVector,
    rho: CartanVector,
    fundamental_weights: Vec<CartanVector>,
    weyl: Vec<WeylElement>,
    /// `frame[i][k]`: component `i` of the k-th orthonormal vector of the
    /// sum-zero hyperplane of `R^n`.
    frame: Vec<[f64; MAX_RANK]>,
    /// Inverse of the matrix whose columns are the simple coroots.
    coroot_inverse: [[f64; MAX_RANK]; MAX_RANK],
    /// Hermitian generators with `tr(T_j T_k) = δ_jk`; the first `rank`
    /// are diagonal and span the Cartan subalgebra.
    hermitian_basis: Vec<DMatrix<Complex64>>,
    alcove_vertices: Vec<CartanVector>,
    alcove_volume: f64,
}

/// Builds the model of SU(n) for `n ∈ {2, 3}`.
pub fn build_su_model(n: usize) -> Result<GroupModel> {
    GroupModel::su(n)
}

impl GroupModel {
    pub fn su(n: usize) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::UnsupportedGroup(n));
        }
        let rank = n - 1;

        // Helmert frame: f_k = (1, …, 1, −k, 0, …)/√(k(k+1)).
        let mut frame = vec![[0.0; MAX_RANK]; n];
        for k in 1..=rank {
            let norm = ((k * (k + 1)) as f64).sqrt();
            for row in frame.iter_mut().take(k) {
                row[k - 1] = 1.0 / norm;
            }
            frame[k][k - 1] = -(k as f64) / norm;
        }

        let root = |i: usize, j: usize| {
            let c: Vec<f64> = (0..rank).map(|k| frame[i][k] - frame[j][k]).collect();
            CartanVector::new(&c)
        };
        let simple_roots: Vec<CartanVector> = (0..rank).map(|i| root(i, i + 1)).collect();
        // Simply laced with (α|α) = 2, so α^∨ = 2α/(α|α) = α.
        let simple_coroots = simple_roots.clone();
        let mut positive_roots = Vec::new();
        for height in 1..n {
            for i in 0..n - height {
                positive_roots.push(root(i, i + height));
            }
        }
        let highest_root = root(0, n - 1);
        let mut rho = CartanVector::zeros(rank);
        for a in &positive_roots {
            rho += *a * 0.5;
        }

        let mut basis_cols = [[0.0; MAX_RANK]; MAX_RANK];
        for (j, c) in simple_coroots.iter().enumerate() {
            for i in 0..rank {
                basis_cols[i][j] = c[i];
            }
        }
        let coroot_inverse = invert(&basis_cols, rank);
        // Fundamental weights are dual to the simple coroots: the rows of the
        // inverse coroot matrix.
        let fundamental_weights: Vec<CartanVector> = (0..rank)
            .map(|i| CartanVector::new(&coroot_inverse[i][..rank]))
            .collect();

        let weyl = permutations(n)
            .into_iter()
            .map(|perm| {
                let mut m = [[0.0; MAX_RANK]; MAX_RANK];
                for (k, row) in m.iter_mut().enumerate().take(rank) {
                    for (l, entry) in row.iter_mut().enumerate().take(rank) {
                        *entry = (0..n).map(|i| frame[perm[i]][k] * frame[i][l]).sum();
                    }
                }
                WeylElement {
                    matrix: m,
                    det: permutation_sign(&perm),
                    permutation: perm,
                }
            })
            .collect();

        let mut hermitian_basis = Vec::with_capacity(n * n - 1);
        for k in 0..rank {
            let mut t = DMatrix::<Complex64>::zeros(n, n);
            for i in 0..n {
                t[(i, i)] = Complex64::new(frame[i][k], 0.0);
            }
            hermitian_basis.push(t);
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..n {
            for j in i + 1..n {
                let mut sym = DMatrix::<Complex64>::zeros(n, n);
                sym[(i, j)] = Complex64::new(s, 0.0);
                sym[(j, i)] = Complex64::new(s, 0.0);
                hermitian_basis.push(sym);
                let mut anti = DMatrix::<Complex64>::zeros(n, n);
                anti[(i, j)] = Complex64::new(0.0, -s);
                anti[(j, i)] = Complex64::new(0.0, s);
                hermitian_basis.push(anti);
            }
        }

        let mut alcove_vertices = vec![CartanVector::zeros(rank)];
        alcove_vertices.extend(fundamental_weights.iter().copied());
        let alcove_volume = match rank {
            1 => fundamental_weights[0].norm(),
            _ => {
                let (a, b) = (fundamental_weights[0], fundamental_weights[1]);
                0.5 * (a[0] * b[1] - a[1] * b[0]).abs()
            }
        };

        Ok(Self {
            matrix_dim: n,
            rank,
            simple_roots,
            simple_coroots,
            positive_roots,
            highest_root,
            rho,
            fundamental_weights,
            weyl,
            frame,
            coroot_inverse,
            hermitian_basis,
            alcove_vertices,
            alcove_volume,
        })
    }

    pub fn su2() -> Self {
        Self::su(2).expect("SU(2) is supported")
    }

    pub fn su3() -> Self {
        Self::su(3).expect("SU(3) is supported")
    }

    pub fn name(&self) -> String {
        format!("su{}", self.matrix_dim)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    /// Real dimension of the Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        self.matrix_dim * self.matrix_dim - 1
    }

    pub fn simple_roots(&self) -> &[CartanVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[CartanVector] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[CartanVector] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> CartanVector {
        self.highest_root
    }

    /// Coroot of the highest root; equals `θ` under the normalized metric.
    pub fn highest_coroot(&self) -> CartanVector {
        self.highest_root * (2.0 / self.highest_root.norm_sq())
    }

    pub fn rho(&self) -> CartanVector {
        self.rho
    }

    pub fn fundamental_weights(&self) -> &[CartanVector] {
        &self.fundamental_weights
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        self.positive_roots.len()
    }

    /// Vertices of the fundamental alcove `A` (level 1), origin first.
    pub fn alcove_vertices(&self) -> &[CartanVector] {
        &self.alcove_vertices
    }

    /// Lebesgue volume of `A` in metric coordinates.
    pub fn alcove_volume(&self) -> f64 {
        self.alcove_volume
    }

    pub fn alcove_barycenter(&self) -> CartanVector {
        let mut b = CartanVector::zeros(self.rank);
        for v in &self.alcove_vertices {
            b += *v;
        }
        b * (1.0 / self.alcove_vertices.len() as f64)
    }

    /// Value of the root (covector) `alpha` at `x`.
    #[inline]
    pub fn pair_root(&self, alpha: &CartanVector, x: &CartanVector) -> f64 {
        alpha.dot(x)
    }

    /// Whether `0 ≤ α(x) ≤ level` for all positive roots, up to `tol`.
    pub fn in_alcove(&self, x: &CartanVector, level: f64, tol: f64) -> bool {
        self.simple_roots.iter().all(|a| a.dot(x) >= -tol) && self.highest_root.dot(x) <= level + tol
    }

    /// Distance-like margin to the boundary of `A_level`, measured in root
    /// values (`min` over the walls).
    pub fn alcove_margin(&self, x: &CartanVector, level: f64) -> f64 {
        let inner = self
            .simple_roots
            .iter()
            .map(|a| a.dot(x))
            .fold(f64::INFINITY, f64::min);
        inner.min(level - self.highest_root.dot(x))
    }

    /// Coordinates of `x` in the basis of simple coroots.
    pub fn coroot_coordinates(&self, x: &CartanVector) -> [f64; MAX_RANK] {
        let y = x.transform(&self.coroot_inverse);
        let mut out = [0.0; MAX_RANK];
        out[..self.rank].copy_from_slice(y.coords());
        out
    }

    /// The lattice vector `Σ c_i α_i^∨`.
    pub fn from_coroot_coordinates(&self, c: &[f64]) -> CartanVector {
        let mut v = CartanVector::zeros(self.rank);
        for (ci, a) in c.iter().zip(&self.simple_coroots) {
            v += *a * *ci;
        }
        v
    }

    /// The point `x` from given simple-root values `α_i(x)`.
    pub fn from_root_values(&self, values: &[f64]) -> Result<CartanVector> {
        if values.len() != self.rank {
            return Err(invalid(format!(
                "expected {} simple-root values, got {}",
                self.rank,
                values.len()
            )));
        }
        let mut v = CartanVector::zeros(self.rank);
        for (vi, w) in values.iter().zip(&self.fundamental_weights) {
            v += *w * *vi;
        }
        Ok(v)
    }

    /// Simple-root values `α_i(x)`.
    pub fn root_values(&self, x: &CartanVector) -> Vec<f64> {
        self.simple_roots.iter().map(|a| a.dot(x)).collect()
    }

    /// Diagonal entries `h` with `cartan_embedding(x) = diag(2iπ h)`.
    pub fn to_diagonal(&self, x: &CartanVector) -> Vec<f64> {
        self.frame
            .iter()
            .map(|row| (0..self.rank).map(|k| row[k] * x[k]).sum())
            .collect()
    }

    /// Inverse of [`Self::to_diagonal`]; `h` is projected to the sum-zero
    /// hyperplane first.
    pub fn from_diagonal(&self, h: &[f64]) -> CartanVector {
        let mut c = [0.0; MAX_RANK];
        for (i, hi) in h.iter().enumerate() {
            for (k, ck) in c.iter_mut().enumerate().take(self.rank) {
                *ck += self.frame[i][k] * hi;
            }
        }
        CartanVector::new(&c[..self.rank])
    }

    /// The anti-Hermitian traceless matrix representing `x`.
    pub fn cartan_embedding(&self, x: &CartanVector) -> DMatrix<Complex64> {
        let h = self.to_diagonal(x);
        DMatrix::from_fn(self.matrix_dim, self.matrix_dim, |i, j| {
            if i == j {
                Complex64::new(0.0, 2.0 * PI * h[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Hermitian generators `T_k`, orthonormal for the trace form.
    pub fn hermitian_basis(&self) -> &[DMatrix<Complex64>] {
        &self.hermitian_basis
    }

    /// The algebra element `2iπ Σ c_k T_k` with orthonormal coordinates `c`.
    pub fn algebra_matrix(&self, coords: &[f64]) -> DMatrix<Complex64> {
        assert_eq!(coords.len(), self.algebra_dim());
        let mut m = DMatrix::<Complex64>::zeros(self.matrix_dim, self.matrix_dim);
        for (c, t) in coords.iter().zip(&self.hermitian_basis) {
            m += t * Complex64::new(0.0, 2.0 * PI * c);
        }
        m
    }

    /// Orthonormal coordinates of an anti-Hermitian traceless matrix.
    pub fn algebra_coords(&self, m: &DMatrix<Complex64>) -> Vec<f64> {
        self.hermitian_basis
            .iter()
            .map(|t| ((m * t).trace() / Complex64::new(0.0, 2.0 * PI)).re)
            .collect()
    }

    /// The invariant product `(A|B) = −tr(AB)/(4π²)`.
    pub fn inner(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        -(a * b).trace().re / (4.0 * PI * PI)
    }

    /// `‖λ + ρ‖² − ‖ρ‖²`, the Casimir energy of a weight.
    pub fn weight_energy(&self, weight: &CartanVector) -> f64 {
        (*weight + self.rho).norm_sq() - self.rho.norm_sq()
    }

    pub fn dominant_weight(&self, coroot_values: &[u32]) -> Result<DominantWeight> {
        if coroot_values.len() != self.rank {
            return Err(invalid("wrong number of coroot values"));
        }
        let mut w = CartanVector::zeros(self.rank);
        for (m, f) in coroot_values.iter().zip(&self.fundamental_weights) {
            w += *f * (*m as f64);
        }
        Ok(DominantWeight {
            coroot_values: coroot_values.to_vec(),
            weight_vector: w,
        })
    }

    /// All dominant weights with energy at most `cutoff`, sorted by energy
    /// (ties broken by coroot labels).
    pub fn enumerate_dominant_weights(&self, cutoff: f64) -> Vec<DominantWeight> {
        let cutoff = cutoff.max(0.0);
        let tol = 1e-9 * cutoff.max(1.0);
        // Energy is increasing in each label since (ω_i|ω_j) ≥ 0 and (ω_i|ρ) > 0.
        let bound = |i: usize| {
            let w = &self.fundamental_weights[i];
            let (a, b) = (w.norm_sq(), 2.0 * w.dot(&self.rho));
            ((-b + (b * b + 4.0 * a * (cutoff + tol)).sqrt()) / (2.0 * a)).floor() as u32
        };
        let mut out = Vec::new();
        let mut labels = vec![0u32; self.rank];
        let bounds: Vec<u32> = (0..self.rank).map(bound).collect();
        loop {
            let w = self.dominant_weight(&labels).expect("rank matches");
            if self.weight_energy(&w.weight_vector) <= cutoff + tol {
                out.push(w);
            }
            let mut i = 0;
            loop {
                if i == self.rank {
                    out.sort_by(|a, b| {
                        let ea = self.weight_energy(&a.weight_vector);
                        let eb = self.weight_energy(&b.weight_vector);
                        ea.partial_cmp(&eb)
                            .unwrap()
                            .then_with(|| a.coroot_values.cmp(&b.coroot_values))
                    });
                    return out;
                }
                if labels[i] < bounds[i] {
                    labels[i] += 1;
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
        }
    }

    /// Partition `λ_1 ≥ … ≥ λ_n = 0` of a dominant weight of SU(n).
    pub(crate) fn partition(&self, weight: &DominantWeight) -> Vec<i64> {
        let n = self.matrix_dim;
        let mut p = vec![0i64; n];
        for i in (0..n - 1).rev() {
            p[i] = p[i + 1] + weight.coroot_values[i] as i64;
        }
        p
    }
}

fn invert(m: &[[f64; MAX_RANK]; MAX_RANK], rank: usize) -> [[f64; MAX_RANK]; MAX_RANK] {
    let mut out = [[0.0; MAX_RANK]; MAX_RANK];
    match rank {
        1 => out[0][0] = 1.0 / m[0][0],
        _ => {
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            out[0][0] = m[1][1] / det;
            out[0][1] = -m[0][1] / det;
            out[1][0] = -m[1][0] / det;
            out[1][1] = m[0][0] / det;
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn permutation_sign(p: &[usize]) -> f64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unsupported_rank() {
        assert!(matches!(build_su_model(4), Err(Error::UnsupportedGroup(4))));
        assert!(build_su_model(1).is_err());
    }

    #[test]
    fn su2_data() {
        let m = GroupModel::su2();
        assert_eq!(m.positive_roots().len(), 1);
        assert_relative_eq!(m.highest_root().norm_sq(), 2.0, epsilon = 1e-15);
        assert_relative_eq!(m.rho().norm_sq(), 0.5, epsilon = 1e-15);
        // α(x) = √2·x.
        let x = CartanVector::new(&[0.5]);
        assert_relative_eq!(m.pair_root(&m.simple_roots()[0], &x), 0.5 * 2f64.sqrt(), epsilon = 1e-15);
        // cartan_embedding(x) = diag(iπ√2 x, −iπ√2 x).
        let h = m.cartan_embedding(&x);
        assert_relative_eq!(h[(0, 0)].im, PI * 2f64.sqrt() * 0.5, epsilon = 1e-14);
        assert_relative_eq!(h[(1, 1)].im, -PI * 2f64.sqrt() * 0.5, epsilon = 1e-14);
        assert_relative_eq!(m.alcove_volume(), 1.0 / 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn su3_data() {
        let m = GroupModel::su3();
        assert_eq!(m.positive_roots().len(), 3);
        assert_relative_eq!(m.rho().norm_sq(), 2.0, epsilon = 1e-14);
        assert_relative_eq!(m.simple_roots()[0].dot(&m.simple_roots()[1]), -1.0, epsilon = 1e-14);
        assert_relative_eq!(m.alcove_volume(), 3f64.sqrt() / 6.0, epsilon = 1e-14);
        assert_eq!(m.weyl_group().len(), 6);
    }

    #[test]
    fn model_invariants() {
        for n in [2, 3] {
            let m = build_su_model(n).unwrap();
            assert_eq!(m.positive_roots().len(), n * (n - 1) / 2);
            for (a, c) in m.simple_roots().iter().zip(m.simple_coroots()) {
                assert_relative_eq!(a.dot(c), 2.0, epsilon = 1e-14);
            }
            assert_relative_eq!(m.highest_root().norm_sq(), 2.0, epsilon = 1e-14);
            let mut half = CartanVector::zeros(m.rank());
            for a in m.positive_roots() {
                half += *a * 0.5;
            }
            assert!((half - m.rho()).norm() < 1e-14);
            // Fundamental weights are dual to the simple coroots.
            for (i, w) in m.fundamental_weights().iter().enumerate() {
                for (j, c) in m.simple_coroots().iter().enumerate() {
                    assert_relative_eq!(w.dot(c), if i == j { 1.0 } else { 0.0 }, epsilon = 1e-14);
                }
            }
            // The Cartan embedding lands in a commutative subalgebra.
            let x = m.embed_test_point(0.3);
            let y = m.embed_test_point(-0.7);
            let (hx, hy) = (m.cartan_embedding(&x), m.cartan_embedding(&y));
            assert!((&hx * &hy - &hy * &hx).camax() < 1e-14);
            // Weyl elements permute the positive roots up to sign.
            for w in m.weyl_group() {
                for a in m.positive_roots() {
                    let wa = w.apply(a);
                    assert!(m
                        .positive_roots()
                        .iter()
                        .any(|b| (wa - *b).norm() < 1e-12 || (wa + *b).norm() < 1e-12));
                }
            }
        }
    }

    #[test]
    fn algebra_basis_is_orthonormal() {
        for m in [GroupModel::su2(), GroupModel::su3()] {
            let d = m.algebra_dim();
            for j in 0..d {
                for k in 0..d {
                    let mut cj = vec![0.0; d];
                    let mut ck = vec![0.0; d];
                    cj[j] = 1.0;
                    ck[k] = 1.0;
                    let ip = m.inner(&m.algebra_matrix(&cj), &m.algebra_matrix(&ck));
                    assert_relative_eq!(ip, if j == k { 1.0 } else { 0.0 }, epsilon = 1e-13);
                }
            }
            let c: Vec<f64> = (0..d).map(|k| 0.1 * k as f64 - 0.3).collect();
            let back = m.algebra_coords(&m.algebra_matrix(&c));
            for (a, b) in c.iter().zip(&back) {
                assert_relative_eq!(a, b, epsilon = 1e-14);
            }
            // The Cartan generators agree with the Cartan embedding.
            let x = m.embed_test_point(0.25);
            let mut cx = vec![0.0; d];
            cx[..m.rank()].copy_from_slice(x.coords());
            assert!((m.algebra_matrix(&cx) - m.cartan_embedding(&x)).camax() < 1e-14);
        }
    }

    #[test]
    fn dominant_weights() {
        let m = GroupModel::su2();
        let w0 = m.enumerate_dominant_weights(0.0);
        assert_eq!(w0.len(), 1);
        assert_eq!(w0[0].coroot_values, vec![0]);
        let w5 = m.enumerate_dominant_weights(5.0);
        assert_eq!(
            w5.iter().map(|w| w.coroot_values[0]).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        let m3 = GroupModel::su3();
        let small = m3.enumerate_dominant_weights(6.0);
        let large = m3.enumerate_dominant_weights(20.0);
        assert_eq!(&large[..small.len()], &small[..]);
        for w in &large {
            assert!(m3.weight_energy(&w.weight_vector) <= 20.0 + 1e-9);
        }
        // The adjoint representation (1,1) has energy (ρ+θ|ρ+θ) − (ρ|ρ) = 6.
        assert!(small.iter().any(|w| w.coroot_values == vec![1, 1]));
    }

    impl GroupModel {
        fn embed_test_point(&self, s: f64) -> CartanVector {
            let c: Vec<f64> = (0..self.rank).map(|k| s * (k as f64 + 1.0)).collect();
            CartanVector::new(&c)
        }
    }
}
