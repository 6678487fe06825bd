//! First-order jets `v + d·ε` with `ε² = 0`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::field::{Field, Ring};
use crate::scalar::GaussianRational;

/// Value and directional derivative. Jets of jets give mixed second derivatives.
#[derive(Clone, PartialEq)]
pub struct Jet<F> {
    pub v: F,
    pub d: F,
}

impl<F: Ring> Jet<F> {
    pub fn new(v: F, d: F) -> Self {
        Jet { v, d }
    }

    pub fn constant(v: F) -> Self {
        Jet { v, d: F::zero() }
    }

    /// A coordinate with unit speed along itself.
    pub fn variable(v: F) -> Self {
        Jet { v, d: F::one() }
    }

    pub fn value(&self) -> &F {
        &self.v
    }

    pub fn deriv(&self) -> &F {
        &self.d
    }

    /// Lifts a point along a direction: `xᵢ + dᵢ ε`.
    pub fn seed(point: &[F], direction: &[F]) -> Vec<Self> {
        point.iter().zip(direction).map(|(p, d)| Jet::new(p.clone(), d.clone())).collect()
    }
}

impl<F: fmt::Debug> fmt::Debug for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}ε)", self.v, self.d)
    }
}

impl<F: Ring> From<GaussianRational> for Jet<F> {
    fn from(q: GaussianRational) -> Self {
        Jet::constant(F::from(q))
    }
}

impl<F: Ring> Zero for Jet<F> {
    fn zero() -> Self {
        Jet::constant(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.is_zero()
    }
}

impl<F: Ring> One for Jet<F> {
    fn one() -> Self {
        Jet::constant(F::one())
    }
}

impl<F: Ring> Neg for Jet<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet { v: -self.v, d: -self.d }
    }
}

impl<F: Ring> Add for Jet<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Jet { v: self.v + rhs.v, d: self.d + rhs.d }
    }
}

impl<'a, F: Ring> Add<&'a Jet<F>> for Jet<F> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        Jet { v: self.v + &rhs.v, d: self.d + &rhs.d }
    }
}

impl<F: Ring> Sub for Jet<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Jet { v: self.v - rhs.v, d: self.d - rhs.d }
    }
}

impl<'a, F: Ring> Sub<&'a Jet<F>> for Jet<F> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        Jet { v: self.v - &rhs.v, d: self.d - &rhs.d }
    }
}

impl<F: Ring> Mul for Jet<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, F: Ring> Mul<&'a Jet<F>> for Jet<F> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        self.mul_ref(rhs)
    }
}

impl<F: Ring> AddAssign for Jet<F> {
    fn add_assign(&mut self, rhs: Self) {
        self.v += rhs.v;
        self.d += rhs.d;
    }
}

impl<'a, F: Ring> AddAssign<&'a Jet<F>> for Jet<F> {
    fn add_assign(&mut self, rhs: &'a Self) {
        self.v += &rhs.v;
        self.d += &rhs.d;
    }
}

impl<F: Ring> SubAssign for Jet<F> {
    fn sub_assign(&mut self, rhs: Self) {
        self.v -= rhs.v;
        self.d -= rhs.d;
    }
}

impl<'a, F: Ring> SubAssign<&'a Jet<F>> for Jet<F> {
    fn sub_assign(&mut self, rhs: &'a Self) {
        self.v -= &rhs.v;
        self.d -= &rhs.d;
    }
}

impl<F: Ring> Ring for Jet<F> {
    fn conj(&self) -> Self {
        Jet { v: self.v.conj(), d: self.d.conj() }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let d = if self.d.is_zero() {
            self.v.mul_ref(&rhs.d)
        } else if rhs.d.is_zero() {
            self.d.mul_ref(&rhs.v)
        } else {
            self.v.mul_ref(&rhs.d) + self.d.mul_ref(&rhs.v)
        };
        Jet { v: self.v.mul_ref(&rhs.v), d }
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        Jet { v: self.v.scale(c), d: self.d.scale(c) }
    }
}

impl<F: Field> Field for Jet<F> {
    fn inv(&self) -> Option<Self> {
        let vi = self.v.inv()?;
        let d = -(self.d.mul_ref(&vi).mul_ref(&vi));
        Some(Jet { v: vi, d })
    }

    fn is_unit(&self) -> bool {
        self.v.is_unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = GaussianRational;

    #[test]
    fn product_rule() {
        let x = Jet::new(Q::from(2), Q::one());
        let y = Jet::new(Q::from(3), Q::one());
        let p = x.mul_ref(&y);
        assert_eq!(p.v, Q::from(6));
        assert_eq!(p.d, Q::from(5));
    }

    #[test]
    fn inverse_rule() {
        let x = Jet::new(Q::from(2), Q::one());
        let inv = x.inv().unwrap();
        assert_eq!(inv.d, Q::ratio(-1, 4));
        assert!(Jet::new(Q::zero(), Q::one()).inv().is_none());
    }

    #[test]
    fn nested_jets_give_mixed_partials() {
        // f(x, y) = x²y at (1, 2); ∂x∂y f = 2x = 2.
        let x = Jet::new(Jet::new(Q::one(), Q::one()), Jet::zero());
        let y = Jet::new(Jet::constant(Q::from(2)), Jet::one());
        let f = x.mul_ref(&x).mul_ref(&y);
        assert_eq!(f.d.d, Q::from(2));
    }
}
