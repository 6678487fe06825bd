//! Scalar abstraction shared by the linear algebra, polynomial and Jordan code.
//!
//! Everything is generic over a commutative [`Ring`] that contains `Q(i)`, so the
//! same routine evaluates at exact points, on jets (exact derivatives), on
//! truncated power series, or symbolically on polynomials.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + From<GaussianRational>
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    /// Coefficientwise complex conjugation.
    fn conj(&self) -> Self;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs
    }

    fn from_rational(r: &BigRational) -> Self {
        GaussianRational::real(r.clone()).into()
    }

    fn from_i64(k: i64) -> Self {
        GaussianRational::from_integer(k).into()
    }

    /// Multiplication by an exact scalar.
    fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_one() {
            return self.clone();
        }
        self.mul_ref(&Self::from(c.clone()))
    }
}

pub trait Field: Ring {
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self) -> Option<Self>;

    /// Whether the element is invertible. For local rings such as jets and
    /// truncated series this is weaker than being nonzero.
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
}

impl Ring for GaussianRational {
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        self * c
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }
}

/// `Σ aᵢ bᵢ` without intermediate clones of the left operands.
pub fn dot<F: Ring>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x.mul_ref(y);
    }
    acc
}
