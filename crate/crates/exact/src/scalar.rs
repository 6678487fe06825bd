//! Exact elements of the Gaussian rational field `Q(i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExactError;
use crate::rat::Rat;

/// A number `re + im·i` with arbitrary-precision rational parts.
///
/// Both parts are kept in lowest terms with positive denominators, so
/// structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rat,
    im: Rat,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re: Rat::from_big(re), im: Rat::from_big(im) }
    }

    pub fn from_integer(k: i64) -> Self {
        GaussianRational { re: Rat::integer(k), im: Rat::zero() }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re: Rat::from_big(re), im: Rat::zero() }
    }

    /// `num/den` as a real number. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational { re: Rat::ratio(num, den), im: Rat::zero() }
    }

    /// `(a/b) + (c/d)·i`.
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational { re: Rat::ratio(a, b), im: Rat::ratio(c, d) }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rat::zero(), im: Rat::one() }
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The value as an `i64`, when it is a real integer in range.
    pub fn to_integer(&self) -> Option<i64> {
        if !self.im.is_zero() {
            return None;
        }
        let r = self.re.to_big();
        if !r.is_integer() {
            return None;
        }
        num_traits::ToPrimitive::to_i64(&r.to_integer())
    }

    /// Real and strictly positive.
    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && !self.re.is_zero() && !self.re.is_negative()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    fn norm_sqr_rat(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        self.norm_sqr_rat().to_big()
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussianRational { re: self.re.recip(), im: Rat::zero() });
        }
        let n = self.norm_sqr_rat();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        let inv = rhs.inv().ok_or(ExactError::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Lossy conversion used only for display.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        fn f(r: &BigRational) -> f64 {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
        (f(&self.re()), f(&self.im()))
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<&BigRational> for GaussianRational {
    fn from(re: &BigRational) -> Self {
        Self::real(re.clone())
    }
}

impl From<i64> for GaussianRational {
    fn from(k: i64) -> Self {
        Self::from_integer(k)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rat::zero(), im: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: Rat::one(), im: Rat::zero() }
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

fn mul_parts(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => GaussianRational { re: &a.re * &b.re, im: Rat::zero() },
        (true, false) => GaussianRational { re: &a.re * &b.re, im: &a.re * &b.im },
        (false, true) => GaussianRational { re: &a.re * &b.re, im: &a.im * &b.re },
        (false, false) => GaussianRational { re: &a.re * &b.re - &a.im * &b.im, im: &a.re * &b.im + &a.im * &b.re },
    }
}

impl<'b> Add<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'b> Sub<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'b> Mul<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'b GaussianRational) -> GaussianRational {
        mul_parts(self, rhs)
    }
}

impl<'b> Div<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'b GaussianRational) -> GaussianRational {
        if rhs.im.is_zero() {
            if rhs.re.is_zero() {
                panic!("division of a Gaussian rational by zero");
            }
            return GaussianRational { re: &self.re / &rhs.re, im: &self.im / &rhs.re };
        }
        mul_parts(self, &rhs.inv().expect("nonzero divisor"))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'b GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            fn $m(&mut self, rhs: GaussianRational) {
                *self = (&*self).$op(&rhs);
            }
        }
        impl<'b> $tr<&'b GaussianRational> for GaussianRational {
            fn $m(&mut self, rhs: &'b GaussianRational) {
                *self = (&*self).$op(rhs);
            }
        }
    };
}

impl AddAssign<GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: GaussianRational) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl<'b> AddAssign<&'b GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &'b GaussianRational) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: GaussianRational) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl<'b> SubAssign<&'b GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &'b GaussianRational) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

assign_op!(MulAssign, mul_assign, mul);
assign_op!(DivAssign, div_assign, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl std::iter::Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::one();
        for x in iter {
            acc *= x;
        }
        acc
    }
}

/// Writes a rational as `n` or `n/d`.
fn write_ratio(f: &mut fmt::Formatter<'_>, r: &Rat) -> fmt::Result {
    let r = r.to_big();
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Imaginary part without its sign, omitting a unit coefficient (`i`, `3/2i`).
fn write_imag(f: &mut fmt::Formatter<'_>, r: &Rat) -> fmt::Result {
    let a = r.abs();
    if a.is_one() {
        write!(f, "i")
    } else {
        write_ratio(f, &a)?;
        write!(f, "i")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write_ratio(f, &self.re);
        }
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return write_imag(f, &self.im);
        }
        write_ratio(f, &self.re)?;
        write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        write_imag(f, &self.im)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_ratio(s: &str) -> Result<Rat, ExactError> {
    let bad = || ExactError::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::from_big(BigRational::new(n, d)))
}

/// Parses the coefficient in front of `i`, where an empty or bare sign means one.
fn parse_imag(s: &str) -> Result<Rat, ExactError> {
    match s {
        "" | "+" => Ok(Rat::one()),
        "-" => Ok(-Rat::one()),
        _ => parse_ratio(s.strip_prefix('+').unwrap_or(s)),
    }
}

impl FromStr for GaussianRational {
    type Err = ExactError;

    /// Accepts `a/b+c/di`, `a/b`, `c/di`, `i`, `-i` and integer shorthands.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ExactError::Parse("empty Gaussian rational".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational { re: parse_ratio(&s)?, im: Rat::zero() });
        };
        // The split point is the last sign that is not the leading one.
        let split = body.char_indices().filter(|&(k, c)| k > 0 && (c == '+' || c == '-')).map(|(k, _)| k).next_back();
        match split {
            Some(k) => Ok(GaussianRational { re: parse_ratio(&body[..k])?, im: parse_imag(&body[k..])? }),
            None => Ok(GaussianRational { re: Rat::zero(), im: parse_imag(body)? }),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
