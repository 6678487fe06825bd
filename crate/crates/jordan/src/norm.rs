//! Symbolic generic norm `Δ(X, Y)`.
//!
//! `Det B(X,Y)` itself is far too large to expand for the bigger spaces (its
//! degree is `2rp`), but `Δ` only has bidegree `(r, r)`. Writing
//! `B = Id − N` with `N = D_{X,Y} − Q_X Q_Y`, the identity
//! `p·log Δ = log Det B = −Σ_k Tr(N^k)/k` determines every bihomogeneous
//! component of `Δ` of degree `≤ r` from power traces truncated at that degree,
//! and `Δ = exp(log Δ)` is recovered with the Euler-operator recursion
//! `d·Δ_d = Σ_j j·ℓ_j·Δ_{d−j}`. All of it runs on packed monomials with
//! checked `i128` coefficients; [`crate::certify`] then proves `Det B = Δ^p`.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use hermsym_exact::{Monomial, MultiPoly, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{JordanError, Result};
use crate::structure::Entry;

const BITS: u32 = 4;
const MASK: u128 = (1 << BITS) - 1;
/// Variables a packed monomial can hold (`x` and `y` together).
pub(crate) const MAX_VARS: usize = (128 / BITS) as usize;

#[derive(Default)]
struct MixHasher(u64);

impl Hasher for MixHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u128(&mut self, v: u128) {
        let folded = (v as u64) ^ ((v >> 64) as u64).rotate_left(29);
        self.0 = (self.0 ^ folded).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        self.0 ^= self.0 >> 31;
    }
}

type Map = HashMap<u128, i128, BuildHasherDefault<MixHasher>>;

/// Integer polynomial stored by `x`-degree, truncated above `bound`.
#[derive(Clone)]
struct GPoly {
    grades: Vec<Map>,
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("coefficient overflow in generic-norm expansion")
}

impl GPoly {
    fn zero() -> Self {
        GPoly { grades: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.grades.iter().all(|g| g.is_empty())
    }

    fn add_term(&mut self, grade: usize, m: u128, c: i128) {
        if c == 0 {
            return;
        }
        if self.grades.len() <= grade {
            self.grades.resize_with(grade + 1, Map::default);
        }
        let slot = self.grades[grade].entry(m).or_insert(0);
        *slot = checked(slot.checked_add(c));
        if *slot == 0 {
            self.grades[grade].remove(&m);
        }
    }

    fn add_scaled(&mut self, rhs: &GPoly, c: i128) {
        for (g, h) in rhs.grades.iter().enumerate() {
            for (&m, &v) in h {
                self.add_term(g, m, checked(v.checked_mul(c)));
            }
        }
    }

    fn mul_trunc(&self, rhs: &GPoly, bound: usize) -> GPoly {
        let mut out = GPoly::zero();
        self.mul_acc(rhs, bound, &mut out);
        out
    }

    fn mul_acc(&self, rhs: &GPoly, bound: usize, out: &mut GPoly) {
        for (ga, ha) in self.grades.iter().enumerate() {
            for (gb, hb) in rhs.grades.iter().enumerate() {
                if ga + gb > bound {
                    break;
                }
                for (&ma, &ca) in ha {
                    for (&mb, &cb) in hb {
                        out.add_term(ga + gb, ma + mb, checked(ca.checked_mul(cb)));
                    }
                }
            }
        }
    }

    fn grade(&self, g: usize) -> GPoly {
        let mut out = GPoly::zero();
        if let Some(h) = self.grades.get(g) {
            out.grades.resize_with(g + 1, Map::default);
            out.grades[g] = h.clone();
        }
        out
    }
}

fn var_key(i: usize) -> u128 {
    1u128 << (BITS * i as u32)
}

fn integer(c: &Q) -> Result<i128> {
    let bad = || JordanError::Invariant(format!("structure constant {c} is not a real integer"));
    if !c.is_real() || !c.re().is_integer() {
        return Err(bad());
    }
    c.re().to_integer().to_i128().ok_or_else(bad)
}

fn mat_mul(a: &[Vec<GPoly>], b: &[Vec<GPoly>], bound: usize) -> Vec<Vec<GPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = GPoly::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            a[i][k].mul_acc(&b[k][j], bound, &mut acc);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `Tr(A·B)` truncated at `bound`.
fn trace_pair(a: &[Vec<GPoly>], b: &[Vec<GPoly>], bound: usize) -> GPoly {
    let n = a.len();
    let mut acc = GPoly::zero();
    for i in 0..n {
        for j in 0..n {
            if !a[i][j].is_zero() && !b[j][i].is_zero() {
                a[i][j].mul_acc(&b[j][i], bound, &mut acc);
            }
        }
    }
    acc
}

fn lcm_upto(r: usize) -> i128 {
    (1..=r as i128).fold(1, |acc, k| acc.lcm(&k))
}

/// `Δ(X, Y)` in the variables `x_1..x_n, y_1..y_n`, from the structure
/// constants of both sides.
pub(crate) fn generic_norm_poly(
    n: usize,
    rank: usize,
    genus: usize,
    plus: &[Entry],
    minus: &[Entry],
) -> Result<MultiPoly<Q>> {
    if 2 * n > MAX_VARS {
        return Err(JordanError::UnsupportedSpace(format!("symbolic generic norm limited to n <= {}", MAX_VARS / 2)));
    }
    let r = rank;
    let x = |a: usize| var_key(a);
    let y = |b: usize| var_key(n + b);

    // 4D_{X,Y}, 2Q_X and 2Q_Y, all with integer coefficients.
    let mut d4 = vec![vec![GPoly::zero(); n]; n];
    let mut qx2 = vec![vec![GPoly::zero(); n]; n];
    for e in plus {
        let c = integer(&e.coef)?;
        d4[e.out][e.c].add_term(1, x(e.a) + y(e.b), 4 * c);
        qx2[e.out][e.b].add_term(2, x(e.a) + x(e.c), c);
    }
    let mut qy2 = vec![vec![GPoly::zero(); n]; n];
    for e in minus {
        let c = integer(&e.coef)?;
        qy2[e.out][e.b].add_term(0, y(e.a) + y(e.c), c);
    }
    // Ñ = 4N = 4D − (2Q_X)(2Q_Y).
    let qq = mat_mul(&qx2, &qy2, r);
    let mut nt = d4;
    for i in 0..n {
        for j in 0..n {
            nt[i][j].add_scaled(&qq[i][j], -1);
        }
    }

    // Powers Ñ^j for j ≤ ⌈r/2⌉, then power traces by splitting k = a + b.
    let half = r.div_ceil(2).max(1);
    let mut powers = vec![nt.clone()];
    for _ in 1..half {
        let next = mat_mul(powers.last().expect("nonempty"), &nt, r);
        powers.push(next);
    }
    let mut traces = Vec::with_capacity(r);
    for k in 1..=r {
        let a = k.div_ceil(2);
        let b = k - a;
        let t = if b == 0 {
            let m = &powers[a - 1];
            let mut acc = GPoly::zero();
            for (i, row) in m.iter().enumerate() {
                acc.add_scaled(&row[i], 1);
            }
            acc
        } else {
            trace_pair(&powers[a - 1], &powers[b - 1], r)
        };
        traces.push(t);
    }

    // ℓ = log Δ scaled by D_ℓ = p·lcm(1..r)·4^r, so that every L_j is integral.
    let p = genus as i128;
    let lcm = lcm_upto(r);
    let four_r = 4i128.pow(r as u32);
    let dl = checked(p.checked_mul(lcm).and_then(|v| v.checked_mul(four_r)));
    let mut ell = vec![GPoly::zero(); r + 1];
    for (k1, t) in traces.iter().enumerate() {
        let k = k1 as i128 + 1;
        let w = -(lcm / k) * 4i128.pow((r - k1 - 1) as u32);
        for (j, slot) in ell.iter_mut().enumerate().skip(1) {
            slot.add_scaled(&t.grade(j), w);
        }
    }

    // A_d = Σ_j j·L_j·A_{d−j}·(d−1)!/(d−j)!·D_ℓ^{j−1}, with Δ_d = A_d/(d!·D_ℓ^d).
    let mut a_parts: Vec<GPoly> = Vec::with_capacity(r + 1);
    let mut one = GPoly::zero();
    one.add_term(0, 0, 1);
    a_parts.push(one);
    for d in 1..=r {
        let mut acc = GPoly::zero();
        for j in 1..=d {
            let falling: i128 = ((d - j + 1)..d).map(|v| v as i128).product();
            let w = checked(
                (j as i128).checked_mul(falling).and_then(|v| v.checked_mul(checked(dl.checked_pow(j as u32 - 1)))),
            );
            let prod = ell[j].mul_trunc(&a_parts[d - j], r);
            acc.add_scaled(&prod, w);
        }
        a_parts.push(acc);
    }

    let mut delta = MultiPoly::zero();
    for (d, part) in a_parts.iter().enumerate() {
        let fact: i128 = (1..=d as i128).product();
        let den = BigInt::from(fact) * BigInt::from(dl).pow(d as u32);
        for (g, h) in part.grades.iter().enumerate() {
            debug_assert!(g == d || h.is_empty());
            for (&m, &c) in h {
                let coef = BigRational::new(BigInt::from(c), den.clone());
                delta.add_term(unpack(m, 2 * n), Q::real(coef));
            }
        }
    }
    if delta.constant_term() != Q::from(1) || delta.is_zero() {
        return Err(JordanError::Invariant("generic norm lost its constant term".into()));
    }
    Ok(delta)
}

fn unpack(m: u128, nvars: usize) -> Monomial {
    Monomial::new((0..nvars).map(|i| ((m >> (BITS * i as u32)) & MASK) as u16).collect())
}
