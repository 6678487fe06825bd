//! Nearly holomorphic sections in normal form `f = Σ_i f_i(z) q(z)^i`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use hermsym_exact::{Expr, Monomial, MultiPoly, Sampler, Q};
use hermsym_geometry::q_map;
use hermsym_jordan::SpaceDescriptor;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{NhError, Result};
use crate::section::{q_coordinate_exprs, x_vars, PolarizedSection};

/// Fibre of the bundle: `Q(i)` or `n⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bundle {
    Scalar,
    Tangent,
}

impl Bundle {
    /// Dimension of the fibre over a space of dimension `n`.
    pub fn fibre_dim(self, n: usize) -> usize {
        match self {
            Bundle::Scalar => 1,
            Bundle::Tangent => n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Bundle::Scalar => "scalar",
            Bundle::Tangent => "tangent",
        }
    }
}

impl std::str::FromStr for Bundle {
    type Err = NhError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scalar" => Ok(Bundle::Scalar),
            "tangent" => Ok(Bundle::Tangent),
            _ => Err(NhError::InvalidSection(format!("unknown bundle `{s}`"))),
        }
    }
}

/// `q_ℓ(z) = ∂_ℓΨ(z) = −κ(c_ℓ, q(z))`.
pub fn q_coordinates(s: &SpaceDescriptor, z: &[Q]) -> Vec<Q> {
    let q = q_map(s, z);
    (0..s.dim()).map(|l| -s.kappa(&s.basis_vector(l), &q)).collect()
}

/// A q-multi-index `i ∈ ℕⁿ`.
pub type QIndex = Vec<u32>;

/// Normal form `Σ_i f_i(x) q^i` with E-valued polynomial coefficients.
#[derive(Clone)]
pub struct NHForm {
    space: Arc<SpaceDescriptor>,
    bundle: Bundle,
    terms: BTreeMap<QIndex, Vec<MultiPoly<Q>>>,
}

impl PartialEq for NHForm {
    fn eq(&self, other: &Self) -> bool {
        self.space.spec() == other.space.spec() && self.bundle == other.bundle && self.terms == other.terms
    }
}

impl fmt::Debug for NHForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NHForm({}, {}) {{", self.space.spec(), self.bundle.name())?;
        for (i, c) in &self.terms {
            write!(f, " q^{i:?}: {c:?};")?;
        }
        write!(f, " }}")
    }
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

fn q_monomial(i: &[u32]) -> Monomial {
    Monomial::new(i.iter().map(|&e| e as u16).collect())
}

impl NHForm {
    pub fn zero(space: Arc<SpaceDescriptor>, bundle: Bundle) -> Self {
        NHForm { space, bundle, terms: BTreeMap::new() }
    }

    /// The scalar constant `c`.
    pub fn constant(space: Arc<SpaceDescriptor>, c: Q) -> Self {
        let n = space.dim();
        let mut f = NHForm::zero(space, Bundle::Scalar);
        f.add_term(vec![0; n], vec![MultiPoly::constant(c)]);
        f
    }

    /// The scalar form `f(x)·q^i`.
    pub fn scalar_term(space: Arc<SpaceDescriptor>, i: QIndex, f: MultiPoly<Q>) -> Self {
        let mut out = NHForm::zero(space, Bundle::Scalar);
        out.add_term(i, vec![f]);
        out
    }

    /// The scalar form `q^i`.
    pub fn q_power(space: Arc<SpaceDescriptor>, i: QIndex) -> Self {
        NHForm::scalar_term(space, i, MultiPoly::one())
    }

    pub fn space(&self) -> &Arc<SpaceDescriptor> {
        &self.space
    }

    pub fn bundle(&self) -> Bundle {
        self.bundle
    }

    pub fn terms(&self) -> &BTreeMap<QIndex, Vec<MultiPoly<Q>>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `max |i|` over stored terms, 0 for the zero form.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|i| i.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    /// Largest x-degree of a coefficient.
    pub fn coefficient_degree(&self) -> usize {
        self.terms.values().flatten().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Adds `coeffs·q^i`, keeping the normal form (no zero terms stored).
    pub fn add_term(&mut self, i: QIndex, coeffs: Vec<MultiPoly<Q>>) {
        let n = self.space.dim();
        assert_eq!(i.len(), n, "q-index length");
        assert_eq!(coeffs.len(), self.bundle.fibre_dim(n), "fibre dimension");
        let slot = self.terms.entry(i.clone()).or_insert_with(|| vec![MultiPoly::zero(); coeffs.len()]);
        for (a, b) in slot.iter_mut().zip(coeffs) {
            *a += b;
        }
        if slot.iter().all(Zero::is_zero) {
            self.terms.remove(&i);
        }
    }

    pub fn add(&self, rhs: &NHForm) -> Result<NHForm> {
        self.same_kind(rhs)?;
        let mut out = self.clone();
        for (i, c) in &rhs.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    fn same_kind(&self, rhs: &NHForm) -> Result<()> {
        if self.space.spec() != rhs.space.spec() || self.bundle != rhs.bundle {
            return Err(NhError::SpaceMismatch(format!(
                "{} {} vs {} {}",
                self.space.spec(),
                self.bundle.name(),
                rhs.space.spec(),
                rhs.bundle.name()
            )));
        }
        Ok(())
    }

    /// `Σ_i f_i(z)·Π q_ℓ(z)^{i_ℓ}`.
    pub fn evaluate(&self, z: &[Q]) -> Vec<Q> {
        let qc = q_coordinates(&self.space, z);
        let mut out = vec![Q::zero(); self.bundle.fibre_dim(self.space.dim())];
        for (i, coeffs) in &self.terms {
            let qi = i.iter().zip(&qc).fold(Q::one(), |acc, (&e, q)| acc * q.pow(e));
            for (o, f) in out.iter_mut().zip(coeffs) {
                *o += f.eval(z) * &qi;
            }
        }
        out
    }

    /// Each component as one polynomial in `(x, q)`, with `q_ℓ` as variable `n + ℓ`.
    pub fn joint_polynomials(&self) -> Vec<MultiPoly<Q>> {
        let n = self.space.dim();
        let mut out = vec![MultiPoly::zero(); self.bundle.fibre_dim(n)];
        for (i, coeffs) in &self.terms {
            let mut exps = vec![0u16; n];
            exps.extend(i.iter().map(|&e| e as u16));
            let qi = MultiPoly::monomial(Monomial::new(exps), Q::one());
            for (o, f) in out.iter_mut().zip(coeffs) {
                *o += f.clone() * &qi;
            }
        }
        out
    }

    /// The polarization `F(x, y)` with `q` replaced by the polarized q-coordinates.
    pub fn polarize(&self) -> PolarizedSection {
        let mut args = x_vars(self.space.dim());
        args.extend(q_coordinate_exprs(&self.space));
        let exprs = self.joint_polynomials().into_iter().map(|p| Expr::poly_at(p, args.clone())).collect();
        PolarizedSection::new(self.space.clone(), self.bundle, exprs).expect("fibre dimension matches")
    }

    /// `D̄^i f`: `q^j ↦ j!/(j−i)!·q^{j−i}` for `i ≤ j`, other terms die.
    pub fn dbar_symbolic(&self, i: &[u32]) -> NHForm {
        let mut out = NHForm::zero(self.space.clone(), self.bundle);
        for (j, coeffs) in &self.terms {
            if i.iter().zip(j).any(|(a, b)| a > b) {
                continue;
            }
            let k: QIndex = j.iter().zip(i).map(|(b, a)| b - a).collect();
            let factor: i64 = j.iter().zip(&k).map(|(&b, &c)| factorial(b) / factorial(c)).product();
            let f = Q::from(factor);
            out.add_term(k, coeffs.iter().map(|p| p.scale(&f)).collect());
        }
        out
    }

    /// Product with a scalar form; degrees add.
    pub fn multiply(&self, g: &NHForm) -> Result<NHForm> {
        if self.bundle != Bundle::Scalar {
            return Err(NhError::SpaceMismatch("the left factor must be scalar".into()));
        }
        if self.space.spec() != g.space.spec() {
            return Err(NhError::SpaceMismatch(format!("{} vs {}", self.space.spec(), g.space.spec())));
        }
        let mut out = NHForm::zero(g.space.clone(), g.bundle);
        for (i, f) in &self.terms {
            for (j, coeffs) in &g.terms {
                let k: QIndex = i.iter().zip(j).map(|(a, b)| a + b).collect();
                out.add_term(k, coeffs.iter().map(|c| f[0].clone() * c).collect());
            }
        }
        Ok(out)
    }

    /// Random form with `terms` q-monomials of degree `≤ max_q` and
    /// coefficients of degree `≤ max_coeff`.
    pub fn random(
        space: Arc<SpaceDescriptor>,
        bundle: Bundle,
        rng: &mut Sampler,
        terms: usize,
        max_q: u32,
        max_coeff: u32,
    ) -> NHForm {
        let n = space.dim();
        let random_index = |rng: &mut Sampler, max: u32| -> Vec<u32> {
            let total = rng.range(0, max as i64) as u32;
            let mut i = vec![0u32; n];
            for _ in 0..total {
                i[rng.index(n)] += 1;
            }
            i
        };
        let mut out = NHForm::zero(space.clone(), bundle);
        for _ in 0..terms {
            let i = random_index(rng, max_q);
            let coeffs = (0..bundle.fibre_dim(n))
                .map(|_| {
                    let mut p = MultiPoly::zero();
                    for _ in 0..3 {
                        let e = random_index(rng, max_coeff);
                        p.add_term(q_monomial(&e), rng.nonzero());
                    }
                    p
                })
                .collect();
            out.add_term(i, coeffs);
        }
        out
    }
}

/// Product of a scalar form with any form.
pub fn form_product(f: &NHForm, g: &NHForm) -> Result<NHForm> {
    f.multiply(g)
}

/// `f_m(z) = p_m(q(z))` written in the q-coordinates.
pub fn hwv_section(space: Arc<SpaceDescriptor>, m: &[u32]) -> Result<NHForm> {
    let p = hermsym_roots::hwv_polynomial(&space, m)?;
    let n = space.dim();
    // q_ℓ = −Σ_b K_ℓb q̃_b, so q̃ = −K⁻¹ q.
    let kinv = space.killing_matrix_inverse();
    let subs: Vec<MultiPoly<Q>> = (0..n)
        .map(|b| {
            let row: Vec<Q> = (0..n).map(|l| -kinv[(b, l)].clone()).collect();
            MultiPoly::linear(&row, 0)
        })
        .collect();
    let in_q = p.compose(&subs);
    let mut out = NHForm::zero(space, Bundle::Scalar);
    for (mono, c) in in_q.terms() {
        out.add_term(mono.padded(n).into_iter().map(u32::from).collect(), vec![MultiPoly::constant(c.clone())]);
    }
    Ok(out)
}

// ---- section files ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffValue {
    Scalar(Q),
    Vector(Vec<Q>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub x_exponents: Vec<u32>,
    pub value: CoeffValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub q_index: Vec<u32>,
    pub coeff: Vec<CoeffEntry>,
}

/// On-disk form of an [`NHForm`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionFile {
    pub space: String,
    pub bundle: Bundle,
    pub terms: Vec<TermEntry>,
}

impl SectionFile {
    pub fn from_form(f: &NHForm) -> SectionFile {
        let n = f.space.dim();
        let terms = f
            .terms
            .iter()
            .map(|(i, coeffs)| {
                // Collect every x-monomial of every component.
                let mut by_mono: BTreeMap<Vec<u32>, Vec<Q>> = BTreeMap::new();
                for (e, p) in coeffs.iter().enumerate() {
                    for (m, c) in p.terms() {
                        let key: Vec<u32> = m.padded(n).into_iter().map(u32::from).collect();
                        by_mono.entry(key).or_insert_with(|| vec![Q::zero(); coeffs.len()])[e] = c.clone();
                    }
                }
                let coeff = by_mono
                    .into_iter()
                    .rev()
                    .map(|(x_exponents, v)| CoeffEntry {
                        x_exponents,
                        value: match f.bundle {
                            Bundle::Scalar => CoeffValue::Scalar(v[0].clone()),
                            Bundle::Tangent => CoeffValue::Vector(v),
                        },
                    })
                    .collect();
                TermEntry { q_index: i.clone(), coeff }
            })
            .collect();
        SectionFile { space: f.space.spec().to_string(), bundle: f.bundle, terms }
    }

    pub fn to_form(&self, space: Arc<SpaceDescriptor>) -> Result<NHForm> {
        if space.spec().to_string() != self.space {
            return Err(NhError::SpaceMismatch(format!("file is for {}, not {}", self.space, space.spec())));
        }
        let n = space.dim();
        let k = self.bundle.fibre_dim(n);
        let mut out = NHForm::zero(space, self.bundle);
        for t in &self.terms {
            if t.q_index.len() != n {
                return Err(NhError::InvalidSection(format!("q_index {:?} has length ≠ {n}", t.q_index)));
            }
            let mut coeffs = vec![MultiPoly::zero(); k];
            for c in &t.coeff {
                if c.x_exponents.len() != n {
                    return Err(NhError::InvalidSection(format!("x_exponents {:?} has length ≠ {n}", c.x_exponents)));
                }
                let values = match (&c.value, self.bundle) {
                    (CoeffValue::Scalar(v), Bundle::Scalar) => vec![v.clone()],
                    (CoeffValue::Vector(v), Bundle::Tangent) if v.len() == n => v.clone(),
                    _ => return Err(NhError::InvalidSection(format!("value {:?} does not fit the fibre", c.value))),
                };
                for (p, v) in coeffs.iter_mut().zip(values) {
                    p.add_term(q_monomial(&c.x_exponents), v);
                }
            }
            out.add_term(t.q_index.clone(), coeffs);
        }
        Ok(out)
    }
}
