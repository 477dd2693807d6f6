//! Weyl denominators, alternating sums and irreducible characters.
//!
//! Characters are evaluated by the Weyl quotient away from the walls of the
//! Weyl group action and by the Jacobi–Trudi determinant near them, where the
//! quotient loses accuracy.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::cartan::CartanVector;
use super::model::{DominantWeight, GroupModel};

/// Below this value of `|π(h)|` the Jacobi–Trudi route is used.
const SINGULAR_THRESHOLD: f64 = 1e-4;

/// `π(h) = ∏_{α>0} sin(π α(h))`.
pub fn weyl_denominator(model: &GroupModel, h: &CartanVector) -> f64 {
    model
        .positive_roots()
        .iter()
        .map(|a| (PI * a.dot(h)).sin())
        .product()
}

/// `Σ_{w∈W} det(w) exp(2iπ (wμ|h))`.
pub fn alternating_sum(model: &GroupModel, mu: &CartanVector, h: &CartanVector) -> Complex64 {
    model
        .weyl_group()
        .iter()
        .map(|w| Complex64::from_polar(w.det, 2.0 * PI * w.apply(mu).dot(h)))
        .sum()
}

/// Character `ch_λ(e^h)` of the irreducible representation with highest
/// weight `λ`. Complex in general (real for SU(2)).
pub fn character(model: &GroupModel, lambda: &DominantWeight, h: &CartanVector) -> Complex64 {
    let denom = weyl_denominator(model, h);
    if denom.abs() >= SINGULAR_THRESHOLD {
        let n_pos = model.positive_root_count() as i32;
        let num = alternating_sum(model, &(lambda.weight_vector + model.rho()), h);
        num / (Complex64::new(0.0, 2.0).powi(n_pos) * denom)
    } else {
        jacobi_trudi(model, lambda, h)
    }
}

/// Schur polynomial `det[h_{λ_i − i + j}(z)]` in the eigenvalues
/// `z_j = exp(2iπ h_j)` of `exp(h)` in the defining representation.
fn jacobi_trudi(model: &GroupModel, lambda: &DominantWeight, h: &CartanVector) -> Complex64 {
    let n = model.matrix_dim();
    let parts = model.partition(lambda);
    let z: Vec<Complex64> = model
        .to_diagonal(h)
        .iter()
        .map(|hj| Complex64::from_polar(1.0, 2.0 * PI * hj))
        .collect();
    let top = (parts[0] as usize) + n;
    // Complete homogeneous polynomials, one variable at a time:
    // h^{(m)}_k = h^{(m−1)}_k + z_m h^{(m)}_{k−1}.
    let mut complete = vec![Complex64::new(0.0, 0.0); top + 1];
    complete[0] = Complex64::new(1.0, 0.0);
    for zm in &z {
        for k in 1..=top {
            let prev = complete[k - 1];
            complete[k] += zm * prev;
        }
    }
    let entry = |i: usize, j: usize| {
        let k = parts[i] + j as i64 - i as i64;
        if k < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            complete[k as usize]
        }
    };
    match n {
        2 => entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0),
        _ => {
            entry(0, 0) * (entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1))
                - entry(0, 1) * (entry(1, 0) * entry(2, 2) - entry(1, 2) * entry(2, 0))
                + entry(0, 2) * (entry(1, 0) * entry(2, 1) - entry(1, 1) * entry(2, 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::extended_weyl_ball;
    use approx::assert_relative_eq;

    fn su2_at(alpha_value: f64) -> CartanVector {
        CartanVector::new(&[alpha_value / 2f64.sqrt()])
    }

    #[test]
    fn denominator_values() {
        let m2 = GroupModel::su2();
        assert_relative_eq!(weyl_denominator(&m2, &su2_at(0.5)), 1.0, epsilon = 1e-15);
        assert_eq!(weyl_denominator(&m2, &CartanVector::zeros(1)), 0.0);
        let m3 = GroupModel::su3();
        let h = m3.from_root_values(&[1.0 / 3.0, 1.0 / 3.0]).unwrap();
        let expected = (PI / 3.0).sin().powi(2) * (2.0 * PI / 3.0).sin();
        assert_relative_eq!(weyl_denominator(&m3, &h), expected, epsilon = 1e-14);
        assert_relative_eq!(expected, 0.649519052838329, epsilon = 1e-12);
    }

    #[test]
    fn su2_characters() {
        let m = GroupModel::su2();
        let trivial = m.dominant_weight(&[0]).unwrap();
        let fundamental = m.dominant_weight(&[1]).unwrap();
        let adjoint = m.dominant_weight(&[2]).unwrap();
        for a in [0.0, 0.1, 0.37, 1.0] {
            assert_relative_eq!(character(&m, &trivial, &su2_at(a)).re, 1.0, epsilon = 1e-12);
        }
        assert_relative_eq!(character(&m, &adjoint, &CartanVector::zeros(1)).re, 3.0, epsilon = 1e-12);
        // 2cos(π/3) = 1.
        assert_relative_eq!(character(&m, &fundamental, &su2_at(1.0 / 3.0)).re, 1.0, epsilon = 1e-12);
        // At the central element −I the fundamental character is −2.
        assert_relative_eq!(character(&m, &fundamental, &su2_at(1.0)).re, -2.0, epsilon = 1e-12);
    }

    #[test]
    fn su3_dimensions_and_conjugation() {
        let m = GroupModel::su3();
        let origin = CartanVector::zeros(2);
        for (labels, dim) in [([0, 0], 1.0), ([1, 0], 3.0), ([1, 1], 8.0), ([3, 0], 10.0), ([2, 1], 15.0)] {
            let w = m.dominant_weight(&labels).unwrap();
            let c = character(&m, &w, &origin);
            assert_relative_eq!(c.re, dim, epsilon = 1e-10);
            assert!(c.im.abs() < 1e-10);
        }
        let h = m.from_root_values(&[0.21, 0.33]).unwrap();
        let w10 = m.dominant_weight(&[1, 0]).unwrap();
        let w01 = m.dominant_weight(&[0, 1]).unwrap();
        let c10 = character(&m, &w10, &h);
        let c01 = character(&m, &w01, &h);
        // The dual representation has the conjugate character.
        assert!((c10 - c01.conj()).norm() < 1e-12);
        let trace: Complex64 = m
            .to_diagonal(&h)
            .iter()
            .map(|hj| Complex64::from_polar(1.0, 2.0 * PI * hj))
            .sum();
        assert!((c10 - trace).norm() < 1e-12);
    }

    #[test]
    fn quotient_and_determinant_agree() {
        let m = GroupModel::su3();
        let h = m.from_root_values(&[0.17, 0.29]).unwrap();
        for w in m.enumerate_dominant_weights(20.0) {
            let a = character(&m, &w, &h);
            let b = jacobi_trudi(&m, &w, &h);
            assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "{:?}", w.coroot_values);
        }
    }

    #[test]
    fn class_function_under_extended_weyl_group() {
        for m in [GroupModel::su2(), GroupModel::su3()] {
            let h = CartanVector::new(&[0.13, -0.08][..m.rank()]);
            let ball = extended_weyl_ball(&m, 3.0);
            for w in m.enumerate_dominant_weights(12.0) {
                let c = character(&m, &w, &h);
                for op in &ball {
                    let moved = character(&m, &w, &op.apply(&h));
                    assert!((c - moved).norm() < 1e-9, "{:?}", w.coroot_values);
                }
            }
        }
    }

    #[test]
    fn continuous_across_threshold() {
        let m = GroupModel::su2();
        let w = m.dominant_weight(&[4]).unwrap();
        let eps = SINGULAR_THRESHOLD / PI;
        let below = character(&m, &w, &su2_at(eps * 0.999)).re;
        let above = character(&m, &w, &su2_at(eps * 1.001)).re;
        assert!((below - above).abs() < 1e-6);
    }
}
