//! Root systems with a marked simple root, in integer ambient coordinates.
//!
//! Simple roots are the standard (Bourbaki) ones, reordered so that the
//! marked root comes first. The root list is generated by closing the simple
//! roots under simple reflections, which also yields every root's
//! coordinates in the simple basis.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use hermsym_jordan::{Family, SpaceSpec};

use crate::error::{Result, RootError};

/// Integer vector in ambient coordinates.
pub type Weight = Vec<i64>;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(dim: usize, i: usize, c: i64) -> Weight {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn sum(terms: &[(usize, i64)], dim: usize) -> Weight {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// Standard simple roots `(name, ambient dimension, simple roots, marked index, coordinate scale)`.
fn standard(spec: &SpaceSpec) -> (String, usize, Vec<Weight>, usize, i64) {
    let chain =
        |dim: usize, len: usize| -> Vec<Weight> { (0..len).map(|i| sum(&[(i, 1), (i + 1, -1)], dim)).collect() };
    match (spec.family(), spec.params()) {
        (Family::I, &[r, s]) => {
            let n = r + s;
            (format!("A{}", n - 1), n, chain(n, n - 1), r - 1, 1)
        }
        (Family::II, &[k]) => {
            let mut simple = chain(k, k - 1);
            simple.push(sum(&[(k - 2, 1), (k - 1, 1)], k));
            (format!("D{k}"), k, simple, k - 1, 1)
        }
        (Family::III, &[k]) => {
            let mut simple = chain(k, k - 1);
            simple.push(unit(k, k - 1, 2));
            (format!("C{k}"), k, simple, k - 1, 1)
        }
        (Family::IV, &[k]) if k % 2 == 1 => {
            let m = k.div_ceil(2);
            let mut simple = chain(m, m - 1);
            simple.push(unit(m, m - 1, 1));
            (format!("B{m}"), m, simple, 0, 1)
        }
        (Family::IV, &[k]) => {
            let m = (k + 2) / 2;
            let mut simple = chain(m, m - 1);
            simple.push(sum(&[(m - 2, 1), (m - 1, 1)], m));
            (format!("D{m}"), m, simple, 0, 1)
        }
        (Family::V, _) => ("E6".into(), 8, e8_simple(6), 0, 2),
        (Family::VI, _) => ("E7".into(), 8, e8_simple(7), 6, 2),
        _ => unreachable!("validated by SpaceSpec"),
    }
}

/// The first `rank` Bourbaki simple roots of E8, doubled to integers.
fn e8_simple(rank: usize) -> Vec<Weight> {
    let mut out = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], sum(&[(0, 2), (1, 2)], 8)];
    for i in 0..6 {
        out.push(sum(&[(i + 1, 2), (i, -2)], 8));
    }
    out.truncate(rank);
    out
}

/// Root system of `g` with the parabolic node marked.
#[derive(Clone)]
pub struct RootSystemData {
    spec: SpaceSpec,
    cartan_type: String,
    scale: i64,
    simple: Vec<Weight>,
    roots: Vec<Weight>,
    coords: Vec<Vec<i64>>,
    index: HashMap<Weight, usize>,
    nc_positive: Vec<Weight>,
    gammas: Vec<Weight>,
}

impl fmt::Debug for RootSystemData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystemData({} = {}, {} roots)", self.spec, self.cartan_type, self.roots.len())
    }
}

pub fn build_root_system(spec: &SpaceSpec) -> Result<RootSystemData> {
    let (cartan_type, _, bourbaki, marked, scale) = standard(spec);
    let mut simple = vec![bourbaki[marked].clone()];
    simple.extend(bourbaki.iter().enumerate().filter(|&(i, _)| i != marked).map(|(_, a)| a.clone()));

    let l = simple.len();
    let norms: Vec<i64> = simple.iter().map(|a| dot(a, a)).collect();
    let mut index: HashMap<Weight, usize> = HashMap::new();
    let mut roots = Vec::new();
    let mut coords = Vec::new();
    let mut queue = VecDeque::new();
    for (i, a) in simple.iter().enumerate() {
        index.insert(a.clone(), roots.len());
        roots.push(a.clone());
        coords.push(unit(l, i, 1));
        queue.push_back(roots.len() - 1);
    }
    while let Some(k) = queue.pop_front() {
        for i in 0..l {
            let c = 2 * dot(&roots[k], &simple[i]) / norms[i];
            if c == 0 {
                continue;
            }
            let beta: Weight = roots[k].iter().zip(&simple[i]).map(|(b, a)| b - c * a).collect();
            if index.contains_key(&beta) {
                continue;
            }
            let mut cb = coords[k].clone();
            cb[i] -= c;
            index.insert(beta.clone(), roots.len());
            roots.push(beta);
            coords.push(cb);
            queue.push_back(roots.len() - 1);
        }
    }

    // Descending lexicographic order in simple-root coordinates.
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| coords[b].cmp(&coords[a]));
    let roots: Vec<Weight> = order.iter().map(|&k| roots[k].clone()).collect();
    let coords: Vec<Vec<i64>> = order.iter().map(|&k| coords[k].clone()).collect();
    let index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
    let nc_positive = roots.iter().zip(&coords).filter(|(_, c)| c[0] == 1).map(|(r, _)| r.clone()).collect();

    let mut rs = RootSystemData {
        spec: spec.clone(),
        cartan_type,
        scale,
        simple,
        roots,
        coords,
        index,
        nc_positive,
        gammas: Vec::new(),
    };
    rs.gammas = rs.greedy_gammas();
    rs.validate()?;
    Ok(rs)
}

impl RootSystemData {
    fn greedy_gammas(&self) -> Vec<Weight> {
        let mut out: Vec<Weight> = Vec::new();
        for beta in &self.nc_positive {
            if out.iter().all(|g| self.strongly_orthogonal_pair(beta, g)) {
                out.push(beta.clone());
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let inv = self.spec.invariants();
        let fail = |what: String| Err(RootError::Invariant(format!("{}: {what}", self.spec)));
        if self.coords.iter().any(|c| c[0].abs() > 1) {
            return fail("a root has marked coefficient of absolute value > 1".into());
        }
        if self.coords.iter().any(|c| !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0))) {
            return fail("a root is neither positive nor negative".into());
        }
        if self.nc_positive.len() != inv.dim {
            return fail(format!("{} noncompact positive roots, expected {}", self.nc_positive.len(), inv.dim));
        }
        if self.gammas.len() != inv.rank {
            return fail(format!("{} strongly orthogonal roots, expected {}", self.gammas.len(), inv.rank));
        }
        Ok(())
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    /// Cartan type of `g`, e.g. `"A3"` or `"E7"`.
    pub fn cartan_type(&self) -> &str {
        &self.cartan_type
    }

    /// Ambient coordinates are this multiple of the standard ones (2 for E6, E7).
    pub fn coordinate_scale(&self) -> i64 {
        self.scale
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple[0].len()
    }

    /// Simple roots, marked root first.
    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    /// All roots, in descending lexicographic order.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    /// Coordinates of a root in the simple roots.
    pub fn root_coords(&self, beta: &[i64]) -> Option<&[i64]> {
        self.index.get(beta).map(|&k| self.coords[k].as_slice())
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        self.index.contains_key(beta)
    }

    /// Weights of `n⁺`: positive roots with marked coefficient 1, highest first.
    pub fn nc_positive(&self) -> &[Weight] {
        &self.nc_positive
    }

    pub fn is_nc_positive(&self, beta: &[i64]) -> bool {
        self.root_coords(beta).is_some_and(|c| c[0] == 1)
    }

    pub fn compact_roots(&self) -> Vec<Weight> {
        self.roots.iter().zip(&self.coords).filter(|(_, c)| c[0] == 0).map(|(r, _)| r.clone()).collect()
    }

    /// The strongly orthogonal roots `γ₁, …, γ_r`.
    pub fn gammas(&self) -> &[Weight] {
        &self.gammas
    }

    pub fn rank(&self) -> usize {
        self.gammas.len()
    }

    /// All roots have the same length.
    pub fn is_simply_laced(&self) -> bool {
        let n0 = dot(&self.roots[0], &self.roots[0]);
        self.roots.iter().all(|r| dot(r, r) == n0)
    }

    /// `2(λ, αᵢ)/(αᵢ, αᵢ)` as a fraction `(numerator, denominator)`.
    fn pairing_parts(&self, lambda: &[i64], i: usize) -> (i64, i64) {
        let a = &self.simple[i];
        (2 * dot(lambda, a), dot(a, a))
    }

    /// `λ(Hᵢ)` for the i-th simple coroot (marked root is `i = 0`), when integral.
    pub fn pairing(&self, lambda: &[i64], i: usize) -> Option<i64> {
        let (n, d) = self.pairing_parts(lambda, i);
        (n % d == 0).then_some(n / d)
    }

    fn pairing_nonnegative(&self, lambda: &[i64], i: usize) -> bool {
        self.pairing_parts(lambda, i).0 >= 0
    }

    /// Dominant for the compact simple roots `α₂, …, α_ℓ`.
    pub fn is_compact_dominant(&self, lambda: &[i64]) -> bool {
        (1..self.simple.len()).all(|i| self.pairing_nonnegative(lambda, i))
    }

    /// Dominant integral for all simple roots.
    pub fn is_dominant_integral(&self, lambda: &[i64]) -> bool {
        (0..self.simple.len()).all(|i| self.pairing(lambda, i).is_some_and(|c| c >= 0))
    }

    /// `b` maximal with `β + bαᵢ` a root.
    pub fn chain_top(&self, beta: &[i64], i: usize) -> usize {
        let a = &self.simple[i];
        let mut cur: Weight = beta.to_vec();
        let mut b = 0;
        loop {
            cur = cur.iter().zip(a).map(|(x, y)| x + y).collect();
            if !self.is_root(&cur) {
                return b;
            }
            b += 1;
        }
    }

    fn strongly_orthogonal_pair(&self, a: &[i64], b: &[i64]) -> bool {
        let plus: Weight = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let minus: Weight = a.iter().zip(b).map(|(x, y)| x - y).collect();
        !self.is_root(&plus) && !self.is_root(&minus) && minus.iter().any(|&x| x != 0)
    }

    /// Whether `γᵢ ± γⱼ` is never a root for `i ≠ j`.
    pub fn pairwise_strongly_orthogonal(&self, roots: &[Weight]) -> bool {
        (0..roots.len()).all(|i| (0..i).all(|j| self.strongly_orthogonal_pair(&roots[i], &roots[j])))
    }

    /// Inner product in ambient coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        dot(a, b)
    }
}

/// Strongly orthogonal roots, highest first.
pub fn strongly_orthogonal(rs: &RootSystemData) -> Vec<Weight> {
    rs.gammas().to_vec()
}
