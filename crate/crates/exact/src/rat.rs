//! Rational numbers with an inline fast path.
//!
//! Almost every value met in practice has a small numerator and denominator,
//! and `BigRational` allocates for each of them. `Rat` keeps values that fit
//! `i64/i64` inline, does the arithmetic in `i128`, and falls back to
//! `BigRational` only when a result does not fit. The representation is
//! canonical (lowest terms, positive denominator, inline whenever possible),
//! so derived equality and hashing are numeric.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Default for Rat {
    fn default() -> Self {
        Rat::Small(0, 1)
    }
}

impl Rat {
    /// `n/d` from `i128` parts; `d != 0`.
    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(BigRational::new_raw(n.into(), d.into())),
        }
    }

    pub(crate) fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(r),
        }
    }

    pub(crate) fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => r.clone(),
        }
    }

    pub(crate) fn integer(k: i64) -> Rat {
        Rat::Small(k, 1)
    }

    pub(crate) fn ratio(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat::from_i128(n as i128, d as i128)
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(r) => r.is_negative(),
        }
    }

    pub(crate) fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub(crate) fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }

    fn big_op(a: &Rat, b: &Rat, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Rat {
        Rat::from_big(f(&a.to_big(), &b.to_big()))
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::Small(1, 1)
    }
    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }
}

impl<'b> Add<&'b Rat> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &'b Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(0, _), _) => rhs.clone(),
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a + c, b)
                } else {
                    Rat::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rat::big_op(self, rhs, |x, y| x + y),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, *d),
                None => Rat::from_big(-self.to_big()),
            },
            Rat::Big(r) => Rat::from_big(-r),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl<'b> Sub<&'b Rat> for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &'b Rat) -> Rat {
        match (self, rhs) {
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a - c, b)
                } else {
                    Rat::from_i128(a * d - c * b, b * d)
                }
            }
            _ => Rat::big_op(self, rhs, |x, y| x - y),
        }
    }
}

impl<'b> Mul<&'b Rat> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &'b Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::zero(),
            (Rat::Small(1, 1), _) => rhs.clone(),
            (_, Rat::Small(1, 1)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Rat::big_op(self, rhs, |x, y| x * y),
        }
    }
}

impl<'b> Div<&'b Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        self * &rhs.recip()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &'b Rat) -> Rat {
                (&self).$m(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl<'b> AddAssign<&'b Rat> for Rat {
    fn add_assign(&mut self, rhs: &'b Rat) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = &*self + &rhs;
    }
}

impl<'b> SubAssign<&'b Rat> for Rat {
    fn sub_assign(&mut self, rhs: &'b Rat) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Rat> for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        *self = &*self - &rhs;
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_falls_back_and_returns() {
        let big = Rat::integer(i64::MAX);
        let sum = &big + &big;
        assert!(matches!(sum, Rat::Big(_)));
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(..)));
        assert_eq!(-&Rat::integer(i64::MIN), &Rat::integer(i64::MAX) + &Rat::one());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Rat::ratio(6, -4), Rat::Small(-3, 2));
        assert_eq!(&Rat::ratio(1, 3) + &Rat::ratio(2, 3), Rat::one());
        assert_eq!(&Rat::ratio(2, 3) * &Rat::ratio(3, 2), Rat::one());
        assert!(Rat::ratio(1, 3) < Rat::ratio(1, 2));
    }
}
