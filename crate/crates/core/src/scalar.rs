//! Coefficient types for group-algebra elements.
//!
//! Two numeric modes are supported: exact rationals (for convolution powers,
//! certificates and algebraic identities) and double precision (for spectral
//! iteration). Real and complex variants of both exist.

use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Exact complex number with rational real and imaginary parts.
pub type ExactComplex = Complex<Rational>;

pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    fn conj(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Closest double-precision complex value.
    fn to_c64(&self) -> Complex64;

    fn is_real(&self) -> bool;
}

/// Real-valued coefficients, used where an ordering is needed
/// (certificates take values in `[0, 1]`).
pub trait RealCoefficient: Coefficient + PartialOrd {
    fn abs(&self) -> Self;

    fn as_f64(&self) -> f64;

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;

    fn div(&self, other: &Self) -> Self;
}

impl Coefficient for f64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        *self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn is_real(&self) -> bool {
        true
    }
}

impl RealCoefficient for f64 {
    fn abs(&self) -> Self {
        libm::fabs(*self)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Coefficient for Complex64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn is_real(&self) -> bool {
        self.im == 0.0
    }
}

impl Coefficient for Rational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn is_real(&self) -> bool {
        true
    }
}

impl RealCoefficient for Rational {
    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn as_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Coefficient for ExactComplex {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(Rational::from_i64(v), Rational::zero())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Squared modulus, in double precision.
pub fn abs_sq<T: Coefficient>(c: &T) -> f64 {
    c.to_c64().norm_sqr()
}

/// Modulus, in double precision.
pub fn abs<T: Coefficient>(c: &T) -> f64 {
    let z = c.to_c64();
    libm::hypot(z.re, z.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_complex_conjugation() {
        let z = ExactComplex::new(Rational::ratio(1, 2), Rational::ratio(-3, 4));
        let w = Coefficient::conj(&z);
        assert_eq!(w.im, Rational::ratio(3, 4));
        assert!(!z.is_real());
        assert!((z * w).is_real());
    }

    #[test]
    fn rational_conversions() {
        let r = Rational::ratio(1, 3);
        assert!((r.as_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(RealCoefficient::abs(&Rational::ratio(-2, 5)), Rational::ratio(2, 5));
    }
}
