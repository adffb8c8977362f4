//! Floating-point linear algebra used by the norm estimators.

mod lanczos;
mod sparse;
mod tridiag;

use core::ops::{Add, AddAssign, Mul, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::Zero;

pub use lanczos::{lanczos_largest, start_vector, LanczosResult, LanczosStart};
pub use sparse::{CsrBuilder, CsrMatrix};
pub use tridiag::{eigenvector, largest_eigenvalue};

/// Scalars the Krylov solvers run over.
pub trait LinScalar:
    Copy
    + Send
    + Sync
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
{
    fn conj(self) -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_parts(re: f64, im: f64) -> Self;
    fn re(self) -> f64;
    fn abs2(self) -> f64;
    fn scale(self, s: f64) -> Self;
}

impl LinScalar for f64 {
    fn conj(self) -> Self {
        self
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
    fn re(self) -> f64 {
        self
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl LinScalar for Complex64 {
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// `Σ conj(aᵢ) bᵢ`.
pub fn dot<S: LinScalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub fn norm<S: LinScalar>(a: &[S]) -> f64 {
    libm::sqrt(a.iter().map(|x| x.abs2()).sum())
}
