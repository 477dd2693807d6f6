//! Points of the Cartan subalgebra in orthonormal metric coordinates.
//!
//! The metric on the Cartan subalgebra is the restriction of the invariant
//! product normalized so that the highest root has squared length 2. Roots and
//! weights are identified with vectors through that metric, so a single
//! fixed-capacity vector type serves for points, covectors and lattice vectors.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

/// Largest rank handled by the crate (SU(3)).
pub const MAX_RANK: usize = 2;

/// A point of the Cartan subalgebra, stored inline (no heap allocation).
#[derive(Clone, Copy, PartialEq)]
pub struct CartanVector {
    coords: [f64; MAX_RANK],
    rank: usize,
}

impl CartanVector {
    /// Builds a vector from its metric coordinates.
    ///
    /// Panics if `coords` is empty or longer than [`MAX_RANK`].
    pub fn new(coords: &[f64]) -> Self {
        assert!(
            !coords.is_empty() && coords.len() <= MAX_RANK,
            "rank {} not supported",
            coords.len()
        );
        let mut c = [0.0; MAX_RANK];
        c[..coords.len()].copy_from_slice(coords);
        Self {
            coords: c,
            rank: coords.len(),
        }
    }

    pub fn zeros(rank: usize) -> Self {
        assert!(rank >= 1 && rank <= MAX_RANK, "rank {rank} not supported");
        Self {
            coords: [0.0; MAX_RANK],
            rank,
        }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.rank]
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.rank, other.rank);
        let mut s = 0.0;
        for i in 0..self.rank {
            s += self.coords[i] * other.coords[i];
        }
        s
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    /// Applies a `rank × rank` matrix stored row-major.
    #[inline]
    pub(crate) fn transform(&self, m: &[[f64; MAX_RANK]; MAX_RANK]) -> Self {
        let mut out = Self::zeros(self.rank);
        for i in 0..self.rank {
            let mut s = 0.0;
            for j in 0..self.rank {
                s += m[i][j] * self.coords[j];
            }
            out.coords[i] = s;
        }
        out
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }
}

impl fmt::Debug for CartanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords()).finish()
    }
}

impl Index<usize> for CartanVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        assert!(i < self.rank);
        &self.coords[i]
    }
}

impl Add for CartanVector {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for CartanVector {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..self.rank {
            self.coords[i] += rhs.coords[i];
        }
    }
}

impl Sub for CartanVector {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for CartanVector {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..self.rank {
            self.coords[i] -= rhs.coords[i];
        }
    }
}

impl Mul<f64> for CartanVector {
    type Output = Self;
    #[inline]
    fn mul(mut self, k: f64) -> Self {
        for i in 0..self.rank {
            self.coords[i] *= k;
        }
        self
    }
}

impl Mul<CartanVector> for f64 {
    type Output = CartanVector;
    #[inline]
    fn mul(self, v: CartanVector) -> CartanVector {
        v * self
    }
}

impl Neg for CartanVector {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self * -1.0
    }
}
