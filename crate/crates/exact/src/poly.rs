//! Sparse multivariate polynomials in canonical graded-lexicographic form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ExactError, Result};
use crate::field::Ring;
use crate::scalar::GaussianRational;

type Q = GaussianRational;

/// Exponent vector with trailing zeros trimmed, so that a monomial does not
/// depend on how many variables the ambient ring has.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u16>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    /// Exponents padded to `n` variables.
    pub fn padded(&self, n: usize) -> Vec<u16> {
        let mut e = self.0.clone();
        e.resize(n.max(e.len()), 0);
        e
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Highest variable index that occurs, plus one.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= rhs.0.len() { (self, rhs) } else { (rhs, self) };
        let mut e = long.0.clone();
        for (a, b) in e.iter_mut().zip(&short.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / x_i`, or `None` when `x_i` does not divide.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exponent(i) == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial::new(e))
    }
}

impl Ord for Monomial {
    /// Ascending total degree; within a degree, larger powers of earlier
    /// variables first (`1, x1, x2, x1², x1x2, x2², …`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Polynomial with coefficients in a ring `F`. Zero coefficients are never
/// stored, so equality is structural.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Ring> MultiPoly<F> {
    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        MultiPoly::monomial(Monomial::var(i), F::one())
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(terms: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ cᵢ x_{offset+i}`.
    pub fn linear(coeffs: &[F], offset: usize) -> Self {
        MultiPoly::from_terms(coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(offset + i), c.clone())))
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&Monomial::one())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Number of variables actually occurring (highest index plus one).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.support_len()).max().unwrap_or(0)
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        MultiPoly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Terms of total degree `< d`.
    pub fn truncated(&self, d: usize) -> Self {
        MultiPoly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() < d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<G: Ring>(&self, mut f: impl FnMut(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map_coeffs(|x| x.mul_ref(c))
    }

    /// Product keeping only terms of degree `< bound`.
    pub fn mul_truncated(&self, rhs: &Self, bound: usize) -> Self {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da >= bound {
                break;
            }
            for (mb, cb) in &rhs.terms {
                if da + mb.degree() >= bound {
                    break;
                }
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(i);
            m.lower(i).map(|low| (low, c.scale(&Q::from(e as i64))))
        }))
    }

    /// Directional derivative `Σ vᵢ ∂ᵢ` with constant direction.
    pub fn directional(&self, v: &[F]) -> Self {
        let mut out = MultiPoly::zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out += self.partial(i).scale(c);
            }
        }
        out
    }

    /// Evaluation in any ring that contains the coefficients.
    pub fn eval<G: Ring + From<F>>(&self, point: &[G]) -> G {
        let nv = self.nvars();
        assert!(point.len() >= nv, "polynomial needs {nv} variables, got {}", point.len());
        let mut maxe = vec![0u16; nv];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                maxe[i] = maxe[i].max(e);
            }
        }
        let powers: Vec<Vec<G>> = (0..nv)
            .map(|i| {
                let mut p = vec![G::one()];
                for k in 1..=maxe[i] as usize {
                    let next = p[k - 1].mul_ref(&point[i]);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = G::zero();
        for (m, c) in &self.terms {
            let mut t = G::from(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul_ref(&powers[i][e as usize]);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }
}

impl MultiPoly<Q> {
    /// Substitutes polynomial `subs[i]` for `x_i`.
    pub fn compose(&self, subs: &[MultiPoly<Q>]) -> MultiPoly<Q> {
        self.eval(subs)
    }

    /// Renders with the given variable names, highest degree first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let coeff = if c.is_real() || c.re().is_zero() { c.to_string() } else { format!("({c})") };
            parts.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => coeff,
                (false, true) => mono.join("*"),
                (false, false) if *c == -Q::one() => format!("-{}", mono.join("*")),
                (false, false) => format!("{coeff}*{}", mono.join("*")),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<F: Ring> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c:?}·{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Ring> From<Q> for MultiPoly<F> {
    fn from(c: Q) -> Self {
        MultiPoly::constant(F::from(c))
    }
}

impl<F: Ring> Zero for MultiPoly<F> {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Ring> One for MultiPoly<F> {
    fn one() -> Self {
        MultiPoly::constant(F::one())
    }
}

impl<F: Ring> Neg for MultiPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<F: Ring> Add for MultiPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, false)
    }
}

impl<'a, F: Ring> Add<&'a MultiPoly<F>> for MultiPoly<F> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        self.combine(rhs, false)
    }
}

impl<F: Ring> Sub for MultiPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, true)
    }
}

impl<'a, F: Ring> Sub<&'a MultiPoly<F>> for MultiPoly<F> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        self.combine(rhs, true)
    }
}

impl<F: Ring> Mul for MultiPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, F: Ring> Mul<&'a MultiPoly<F>> for MultiPoly<F> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        self.mul_ref(rhs)
    }
}

impl<F: Ring> AddAssign for MultiPoly<F> {
    fn add_assign(&mut self, rhs: Self) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a, F: Ring> AddAssign<&'a MultiPoly<F>> for MultiPoly<F> {
    fn add_assign(&mut self, rhs: &'a Self) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<F: Ring> SubAssign for MultiPoly<F> {
    fn sub_assign(&mut self, rhs: Self) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a, F: Ring> SubAssign<&'a MultiPoly<F>> for MultiPoly<F> {
    fn sub_assign(&mut self, rhs: &'a Self) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<F: Ring> Ring for MultiPoly<F> {
    fn conj(&self) -> Self {
        MultiPoly::conj(self)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    fn scale(&self, c: &Q) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }
}

/// Exact `p`-th root of a polynomial with constant term one, by the graded
/// Newton step `p·R_d = [P]_d − [(R_{<d})^p]_d`.
pub fn poly_nth_root(poly: &MultiPoly<Q>, p: u32) -> Result<MultiPoly<Q>> {
    assert!(p > 0, "root index must be positive");
    if !poly.constant_term().is_one() {
        return Err(ExactError::NotAPerfectPower { power: p, degree: 0 });
    }
    let total = poly.degree().unwrap_or(0);
    if !total.is_multiple_of(p as usize) {
        return Err(ExactError::NotAPerfectPower { power: p, degree: total });
    }
    let top = total / p as usize;
    let inv_p = Q::ratio(1, p as i64);
    let mut root = MultiPoly::one();
    for d in 1..=top {
        let power = truncated_pow(&root, p, d + 1);
        let rd = (poly.homogeneous(d) - power.homogeneous(d)).scale(&inv_p);
        root += rd;
    }
    if root.pow(p) != *poly {
        let degree = (0..=total).find(|&d| root.pow(p).homogeneous(d) != poly.homogeneous(d)).unwrap_or(total);
        return Err(ExactError::NotAPerfectPower { power: p, degree });
    }
    Ok(root)
}

/// `base^k` keeping only terms of degree `< bound`.
fn truncated_pow(base: &MultiPoly<Q>, k: u32, bound: usize) -> MultiPoly<Q> {
    let mut acc = MultiPoly::one();
    for _ in 0..k {
        acc = acc.mul_truncated(base, bound);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MultiPoly<Q>;

    #[test]
    fn graded_lex_order() {
        let mut ms = [
            Monomial::new(vec![0, 2]),
            Monomial::new(vec![1]),
            Monomial::one(),
            Monomial::new(vec![1, 1]),
            Monomial::new(vec![0, 1]),
            Monomial::new(vec![2]),
        ];
        ms.sort();
        let got: Vec<Vec<u16>> = ms.iter().map(|m| m.padded(2)).collect();
        assert_eq!(got, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn square_root_of_binomial_square() {
        let xy = P::var(0) * P::var(1);
        let r = P::one() - xy;
        assert_eq!(poly_nth_root(&r.pow(2), 2).unwrap(), r);
        assert_eq!(poly_nth_root(&P::one(), 5).unwrap(), P::one());
    }

    #[test]
    fn non_power_is_rejected() {
        let p = P::one() + P::var(0) + P::var(1) * P::var(1);
        assert!(matches!(poly_nth_root(&p, 2), Err(ExactError::NotAPerfectPower { .. })));
    }

    #[test]
    fn eval_and_partials() {
        let p = P::var(0) * P::var(0) * P::var(1);
        let at = [Q::from(3), Q::from(2)];
        assert_eq!(p.eval(&at), Q::from(18));
        assert_eq!(p.partial(0).eval(&at), Q::from(12));
    }
}
