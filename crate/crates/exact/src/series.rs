//! Truncated multivariate power series with `Q(i)` coefficients.
//!
//! A series carries an `order`: every term of total degree below it is exact,
//! nothing is known about higher terms. Polynomials are series of infinite
//! order. Variables are anonymous indices, so no context object is needed and
//! series can flow through the generic [`Ring`] code like any other scalar.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::field::{Field, Ring};
use crate::scalar::GaussianRational;

type Q = GaussianRational;

const BITS: u32 = 6;
const MASK: u128 = (1 << BITS) - 1;
/// Largest number of variables a packed monomial holds.
pub const MAX_VARS: usize = (128 / BITS) as usize;
/// Order of an exact (untruncated) series.
pub const EXACT: usize = usize::MAX;

/// Exponent vector packed six bits per variable.
type Mono = u128;

fn mono_of(exps: &[u32]) -> Mono {
    assert!(exps.len() <= MAX_VARS, "too many series variables");
    exps.iter().enumerate().fold(0, |m, (i, &e)| {
        assert!(e as u128 <= MASK, "series exponent overflow");
        m | ((e as u128) << (BITS * i as u32))
    })
}

fn exponent(m: Mono, var: usize) -> u32 {
    ((m >> (BITS * var as u32)) & MASK) as u32
}

fn unpack(m: Mono, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|i| exponent(m, i)).collect()
}

#[derive(Clone)]
pub struct Series {
    order: usize,
    /// Homogeneous components indexed by degree, zero coefficients never stored.
    by_deg: Vec<HashMap<Mono, Q>>,
}

impl Series {
    pub fn constant(c: Q, order: usize) -> Self {
        let mut s = Series { order, by_deg: vec![HashMap::new()] };
        if !c.is_zero() && order > 0 {
            s.by_deg[0].insert(0, c);
        }
        s.trim();
        s
    }

    /// `c + t_var`, where `t_var` is the series variable.
    pub fn variable(var: usize, c: Q, order: usize) -> Self {
        assert!(var < MAX_VARS, "too many series variables");
        let mut s = Series::constant(c, order);
        if order > 1 {
            s.set_term(1 << (BITS * var as u32), 1, Q::one());
        }
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Q)>>(terms: I, order: usize) -> Self {
        let mut s = Series { order, by_deg: Vec::new() };
        for (exps, c) in terms {
            let d = exps.iter().sum::<u32>() as usize;
            if d < order {
                s.add_term(mono_of(&exps), d, c);
            }
        }
        s.trim();
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Lowest degree carrying a nonzero term, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.by_deg.iter().position(|h| !h.is_empty())
    }

    pub fn constant_term(&self) -> Q {
        self.by_deg.first().and_then(|h| h.get(&0)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Q {
        let d = exps.iter().sum::<u32>() as usize;
        self.by_deg.get(d).and_then(|h| h.get(&mono_of(exps))).cloned().unwrap_or_else(Q::zero)
    }

    /// All stored terms as `(exponents, coefficient)`, sorted for determinism.
    pub fn terms(&self, nvars: usize) -> Vec<(Vec<u32>, Q)> {
        let mut out: Vec<(Vec<u32>, Q)> =
            self.by_deg.iter().flat_map(|h| h.iter().map(|(&m, c)| (unpack(m, nvars), c.clone()))).collect();
        out.sort_by(|a, b| {
            let (da, db) = (a.0.iter().sum::<u32>(), b.0.iter().sum::<u32>());
            da.cmp(&db).then_with(|| b.0.cmp(&a.0))
        });
        out
    }

    pub fn num_terms(&self) -> usize {
        self.by_deg.iter().map(|h| h.len()).sum()
    }

    /// Drops every term of degree `>= order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let by_deg = self.by_deg.iter().take(order).cloned().collect();
        let mut s = Series { order, by_deg };
        s.trim();
        s
    }

    /// Partial derivative in the given variable; the order drops by one.
    pub fn derivative(&self, var: usize) -> Self {
        let order = if self.is_exact() { EXACT } else { self.order.saturating_sub(1) };
        let mut s = Series { order, by_deg: Vec::new() };
        let unit: Mono = 1 << (BITS * var as u32);
        for (d, h) in self.by_deg.iter().enumerate().skip(1) {
            for (&m, c) in h {
                let e = exponent(m, var);
                if e > 0 && d - 1 < order {
                    s.add_term(m - unit, d - 1, c.scale(&Q::from(e as i64)));
                }
            }
        }
        s.trim();
        s
    }

    fn set_term(&mut self, m: Mono, d: usize, c: Q) {
        if self.by_deg.len() <= d {
            self.by_deg.resize_with(d + 1, HashMap::new);
        }
        self.by_deg[d].insert(m, c);
    }

    fn add_term(&mut self, m: Mono, d: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        if self.by_deg.len() <= d {
            self.by_deg.resize_with(d + 1, HashMap::new);
        }
        let slot = self.by_deg[d].entry(m).or_insert_with(Q::zero);
        *slot += c;
    }

    fn trim(&mut self) {
        for h in &mut self.by_deg {
            h.retain(|_, c| !c.is_zero());
        }
        while self.by_deg.last().is_some_and(|h| h.is_empty()) {
            self.by_deg.pop();
        }
        if self.by_deg.len() > self.order {
            self.by_deg.truncate(self.order);
        }
    }

    fn combine(&self, rhs: &Series, negate: bool) -> Series {
        let order = self.order.min(rhs.order);
        let mut s = Series { order, by_deg: self.by_deg.iter().take(order).cloned().collect() };
        for (d, h) in rhs.by_deg.iter().enumerate().take(order) {
            for (&m, c) in h {
                s.add_term(m, d, if negate { -c } else { c.clone() });
            }
        }
        s.trim();
        s
    }

    fn product(&self, rhs: &Series) -> Series {
        // Known precision: (a + O(N_a))(b + O(N_b)) = ab + O(min(N_a + v_b, N_b + v_a)).
        let (va, vb) = match (self.valuation(), rhs.valuation()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                let order = self.order.min(rhs.order);
                return Series { order, by_deg: Vec::new() };
            }
        };
        let order = self.order.saturating_add(vb).min(rhs.order.saturating_add(va));
        let mut s = Series { order, by_deg: Vec::new() };
        for (da, ha) in self.by_deg.iter().enumerate() {
            if ha.is_empty() {
                continue;
            }
            for (db, hb) in rhs.by_deg.iter().enumerate() {
                let d = da + db;
                if d >= order {
                    break;
                }
                for (&ma, ca) in ha {
                    for (&mb, cb) in hb {
                        s.add_term(ma + mb, d, ca * cb);
                    }
                }
            }
        }
        s.trim();
        s
    }
}

impl PartialEq for Series {
    /// Equality of the known parts up to the common order.
    fn eq(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let n = self.by_deg.len().max(other.by_deg.len()).min(order);
        let empty = HashMap::new();
        (0..n).all(|d| self.by_deg.get(d).unwrap_or(&empty) == other.by_deg.get(d).unwrap_or(&empty))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nvars = self
            .by_deg
            .iter()
            .flat_map(|h| h.keys())
            .map(|&m| (0..MAX_VARS).rev().find(|&i| exponent(m, i) > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0);
        let terms: Vec<String> = self.terms(nvars).into_iter().map(|(e, c)| format!("({c}){e:?}")).collect();
        write!(f, "{} + O({})", terms.join(" + "), if self.is_exact() { "∞".into() } else { self.order.to_string() })
    }
}

impl From<Q> for Series {
    fn from(c: Q) -> Self {
        Series::constant(c, EXACT)
    }
}

impl Zero for Series {
    fn zero() -> Self {
        Series { order: EXACT, by_deg: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.by_deg.is_empty()
    }
}

impl One for Series {
    fn one() -> Self {
        Series::constant(Q::one(), EXACT)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(mut self) -> Series {
        for h in &mut self.by_deg {
            for c in h.values_mut() {
                *c = -&*c;
            }
        }
        self
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        self.combine(&rhs, false)
    }
}

impl<'a> Add<&'a Series> for Series {
    type Output = Series;
    fn add(self, rhs: &'a Series) -> Series {
        self.combine(rhs, false)
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        self.combine(&rhs, true)
    }
}

impl<'a> Sub<&'a Series> for Series {
    type Output = Series;
    fn sub(self, rhs: &'a Series) -> Series {
        self.combine(rhs, true)
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        self.product(&rhs)
    }
}

impl<'a> Mul<&'a Series> for Series {
    type Output = Series;
    fn mul(self, rhs: &'a Series) -> Series {
        self.product(rhs)
    }
}

impl AddAssign for Series {
    fn add_assign(&mut self, rhs: Series) {
        *self = self.combine(&rhs, false);
    }
}

impl<'a> AddAssign<&'a Series> for Series {
    fn add_assign(&mut self, rhs: &'a Series) {
        *self = self.combine(rhs, false);
    }
}

impl SubAssign for Series {
    fn sub_assign(&mut self, rhs: Series) {
        *self = self.combine(&rhs, true);
    }
}

impl<'a> SubAssign<&'a Series> for Series {
    fn sub_assign(&mut self, rhs: &'a Series) {
        *self = self.combine(rhs, true);
    }
}

impl Ring for Series {
    fn conj(&self) -> Self {
        let mut s = self.clone();
        for h in &mut s.by_deg {
            for c in h.values_mut() {
                *c = c.conj();
            }
        }
        s
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.product(rhs)
    }

    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Series { order: self.order, by_deg: Vec::new() };
        }
        let mut s = self.clone();
        for h in &mut s.by_deg {
            for v in h.values_mut() {
                *v = &*v * c;
            }
        }
        s
    }
}

impl Field for Series {
    /// Geometric-series inverse of a series with nonzero constant term. An exact
    /// non-constant series has no finite inverse and is rejected.
    fn inv(&self) -> Option<Self> {
        let c = self.constant_term();
        let ci = c.inv()?;
        if self.valuation() == Some(0) && self.num_terms() == 1 {
            return Some(Series::constant(ci, self.order));
        }
        assert!(!self.is_exact(), "inverse of an exact non-constant series has infinite order");
        // a = c(1 - u) with u of positive valuation, a⁻¹ = c⁻¹ Σ uᵏ.
        let u = -(self.scale(&ci) - Series::one());
        let mut acc = Series::one().truncate(self.order);
        let mut power = Series::one();
        for _ in 1..self.order {
            power = power.product(&u);
            if power.is_zero() && power.order >= self.order {
                break;
            }
            acc += &power;
        }
        Some(acc.truncate(self.order).scale(&ci))
    }

    fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        let x = Series::variable(0, Q::zero(), 5);
        let one_minus_x = Series::one() - x;
        let inv = one_minus_x.inv().unwrap();
        for k in 0..5 {
            assert_eq!(inv.coefficient(&[k]), Q::one());
        }
        assert_eq!(inv.order(), 5);
        assert_eq!((inv * one_minus_x), Series::one());
    }

    #[test]
    fn precision_tracks_valuation() {
        let x = Series::variable(0, Q::zero(), 4);
        let x3 = x.clone() * x.clone() * x;
        assert_eq!(x3.order(), 6);
        assert_eq!(x3.coefficient(&[3]), Q::one());
    }

    #[test]
    fn derivative_lowers_order() {
        let x = Series::variable(0, Q::from(2), 4);
        let y = Series::variable(1, Q::zero(), 4);
        let f = x.clone() * x * y;
        let fy = f.derivative(1);
        assert_eq!(fy.constant_term(), Q::from(4));
        assert_eq!(fy.order(), 3);
    }
}
