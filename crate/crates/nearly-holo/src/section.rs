//! Smooth sections on the chart, polarized: a function of `(z, z̄)` is stored
//! as an expression in independent `x ∈ n⁺` (variables `0..n`) and
//! `y ∈ n⁻` (variables `n..2n`), evaluated at `y = z̄`.

use std::fmt;
use std::sync::Arc;

use hermsym_exact::{Expr, Jet, Ring, Series, Q};
use hermsym_geometry::metric_matrix;
use hermsym_jordan::SpaceDescriptor;
use num_traits::Zero;

use crate::error::{NhError, Result};
use crate::form::Bundle;

pub fn x_vars(n: usize) -> Vec<Expr> {
    (0..n).map(Expr::var).collect()
}

pub fn y_vars(n: usize) -> Vec<Expr> {
    (n..2 * n).map(Expr::var).collect()
}

pub(crate) fn lift<R: Ring>(v: &[Q]) -> Vec<R> {
    v.iter().map(|c| R::from(c.clone())).collect()
}

fn neg<R: Ring>(v: &[R]) -> Vec<R> {
    v.iter().map(|c| -c.clone()).collect()
}

/// Polarized q-map `y^{−x}` as expressions.
pub fn q_tilde_exprs(s: &SpaceDescriptor) -> Vec<Expr> {
    let n = s.dim();
    let (x, y) = (x_vars(n), y_vars(n));
    let u = neg(&x);
    let b = s.bergman_minus(&y, &u);
    let qy: Vec<Expr> = s.q_apply_minus(&y, &u);
    let rhs: Vec<Expr> = y.iter().zip(qy).map(|(a, b)| a.clone() - b).collect();
    Expr::solve(&b, &rhs)
}

/// Polarized q-coordinates `−κ(c_ℓ, y^{−x})`.
pub fn q_coordinate_exprs(s: &SpaceDescriptor) -> Vec<Expr> {
    let qt = q_tilde_exprs(s);
    (0..s.dim()).map(|l| -s.kappa(&lift::<Expr>(&s.basis_vector(l)), &qt)).collect()
}

/// Direction fields `(0, Σ_k H^{k̄i}(x,y) c̄_k)` of `D̄_i`, one per `i`, with
/// `H⁻¹ = gram⁻¹·B(x,−y)ᵀ`.
pub fn dbar_fields<R: Ring + From<Q>>(s: &SpaceDescriptor, x: &[R], y: &[R]) -> Vec<Vec<R>> {
    let n = s.dim();
    let b = s.bergman(x, &neg(y));
    let ginv = s.gram().inverse().expect("the Gram matrix is positive definite");
    (0..n)
        .map(|i| {
            let mut dir = vec![R::zero(); n];
            for (k, d) in dir.iter_mut().enumerate() {
                for m in 0..n {
                    let g = &ginv[(k, m)];
                    if !g.is_zero() && !b[(i, m)].is_zero() {
                        *d += b[(i, m)].scale(g);
                    }
                }
            }
            let mut out = vec![R::zero(); n];
            out.extend(dir);
            out
        })
        .collect()
}

/// Direction field `(c_ℓ, Q_y c_ℓ)` of `δ_ℓ`.
pub fn delta_field<R: Ring + From<Q>>(s: &SpaceDescriptor, y: &[R], l: usize) -> Vec<R> {
    let c: Vec<R> = lift(&s.basis_vector(l));
    let mut out = c.clone();
    out.extend(s.q_apply_minus(y, &c));
    out
}

/// A section in polarized form, one expression per fibre coordinate.
#[derive(Clone)]
pub struct PolarizedSection {
    space: Arc<SpaceDescriptor>,
    bundle: Bundle,
    exprs: Vec<Expr>,
}

impl fmt::Debug for PolarizedSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolarizedSection({}, {}, {:?})", self.space.spec(), self.bundle.name(), self.exprs)
    }
}

impl PolarizedSection {
    pub fn new(space: Arc<SpaceDescriptor>, bundle: Bundle, exprs: Vec<Expr>) -> Result<Self> {
        if exprs.len() != bundle.fibre_dim(space.dim()) {
            return Err(NhError::InvalidSection(format!("{} components for a {} section", exprs.len(), bundle.name())));
        }
        Ok(PolarizedSection { space, bundle, exprs })
    }

    pub fn scalar(space: Arc<SpaceDescriptor>, expr: Expr) -> Self {
        PolarizedSection { space, bundle: Bundle::Scalar, exprs: vec![expr] }
    }

    /// The scalar section `q_k`.
    pub fn q_coordinate(space: Arc<SpaceDescriptor>, k: usize) -> Self {
        let e = q_coordinate_exprs(&space).swap_remove(k);
        PolarizedSection::scalar(space, e)
    }

    pub fn space(&self) -> &Arc<SpaceDescriptor> {
        &self.space
    }

    pub fn bundle(&self) -> Bundle {
        self.bundle
    }

    pub fn exprs(&self) -> &[Expr] {
        &self.exprs
    }

    pub fn with_exprs(&self, exprs: Vec<Expr>) -> Self {
        PolarizedSection { space: self.space.clone(), bundle: self.bundle, exprs }
    }

    /// `F(x, y)` at independent points.
    pub fn eval_polarized(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        let mut vars = x.to_vec();
        vars.extend_from_slice(y);
        Ok(Expr::eval_many(&self.exprs, &vars)?)
    }

    /// `F(z, z̄)`.
    pub fn eval(&self, z: &[Q]) -> Result<Vec<Q>> {
        self.eval_polarized(z, &self.space.conjugate(z))
    }

    /// `F` differentiated along a direction field on `(x, y)`.
    pub fn along(&self, dir: &[Expr]) -> Self {
        self.with_exprs(Expr::directional_many(&self.exprs, dir))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.with_exprs(self.exprs.iter().zip(&rhs.exprs).map(|(a, b)| a.clone() + b).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.with_exprs(self.exprs.iter().zip(&rhs.exprs).map(|(a, b)| a.clone() - b).collect())
    }
}

/// `δ_ℓF = ∂_{c_ℓ}F + ∂̄_{Q_y c_ℓ}F`.
pub fn delta_op(f: &PolarizedSection, l: usize) -> PolarizedSection {
    let y = y_vars(f.space.dim());
    f.along(&delta_field(&f.space, &y, l))
}

/// `D̄_iF` as a new section.
pub fn dbar_op(f: &PolarizedSection, i: usize) -> PolarizedSection {
    let n = f.space.dim();
    let fields = dbar_fields(&f.space, &x_vars(n), &y_vars(n));
    f.along(&fields[i])
}

/// `(D̄_1F, …, D̄_nF)(z)` from y-slot jets and the exact inverse metric.
pub fn dbar_analytic(f: &PolarizedSection, z: &[Q]) -> Result<Vec<Vec<Q>>> {
    let s = &f.space;
    let n = s.dim();
    let hinv = metric_matrix(s, z).inverse().map_err(|_| NhError::SingularMetric)?;
    let mut point: Vec<Jet<Q>> = z.iter().map(|c| Jet::constant(c.clone())).collect();
    point.extend(s.conjugate(z).into_iter().map(Jet::constant));
    let mut partials = Vec::with_capacity(n);
    for j in 0..n {
        // ∂̄ along c̄_j moves the y-slot only.
        let mut pt = point.clone();
        pt[n + j].d = Q::from(1);
        let vals = Expr::eval_many(&f.exprs, &pt)?;
        partials.push(vals.into_iter().map(|v| v.d).collect::<Vec<Q>>());
    }
    Ok((0..n)
        .map(|i| {
            (0..f.exprs.len()).map(|e| (0..n).fold(Q::zero(), |acc, j| acc + &hinv[(j, i)] * &partials[j][e])).collect()
        })
        .collect())
}

/// Taylor expansion of a section around `(x0, y0)`, truncated at total degree
/// `< order` in the offsets. Differential operators with polynomial
/// coefficients act on it exactly, one order lost per derivative.
#[derive(Clone)]
pub struct LocalExpansion {
    space: Arc<SpaceDescriptor>,
    x: Vec<Series>,
    y: Vec<Series>,
    comps: Vec<Series>,
}

impl LocalExpansion {
    pub fn new(f: &PolarizedSection, x0: &[Q], y0: &[Q], order: usize) -> Result<Self> {
        let n = f.space.dim();
        let x: Vec<Series> = (0..n).map(|k| Series::variable(k, x0[k].clone(), order)).collect();
        let y: Vec<Series> = (0..n).map(|k| Series::variable(n + k, y0[k].clone(), order)).collect();
        let mut vars = x.clone();
        vars.extend(y.iter().cloned());
        let comps = Expr::eval_many(&f.exprs, &vars)?;
        Ok(LocalExpansion { space: f.space.clone(), x, y, comps })
    }

    /// Expansion in the y-slot only, with `x = z` held fixed. Enough for
    /// `D̄`, which differentiates in `y` alone; `δ` is not available on it.
    pub fn antiholomorphic_at(f: &PolarizedSection, z: &[Q], order: usize) -> Result<Self> {
        let n = f.space.dim();
        let x: Vec<Series> = z.iter().map(|c| Series::constant(c.clone(), order)).collect();
        let zb = f.space.conjugate(z);
        let y: Vec<Series> = (0..n).map(|k| Series::variable(n + k, zb[k].clone(), order)).collect();
        let mut vars = x.clone();
        vars.extend(y.iter().cloned());
        let comps = Expr::eval_many(&f.exprs, &vars)?;
        Ok(LocalExpansion { space: f.space.clone(), x, y, comps })
    }

    /// Expansion at `(z, z̄)`.
    pub fn at(f: &PolarizedSection, z: &[Q], order: usize) -> Result<Self> {
        LocalExpansion::new(f, z, &f.space.conjugate(z), order)
    }

    pub fn components(&self) -> &[Series] {
        &self.comps
    }

    /// Value at the base point.
    pub fn value(&self) -> Vec<Q> {
        self.comps.iter().map(Series::constant_term).collect()
    }

    /// Applies the derivation `Σ_v dir_v ∂_v`.
    pub fn along(&self, dir: &[Series]) -> Self {
        let comps = self
            .comps
            .iter()
            .map(|c| {
                let mut acc = Series::zero();
                for (v, d) in dir.iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    let dc = c.derivative(v);
                    if !dc.is_zero() {
                        acc += d.clone() * &dc;
                    }
                }
                // Keep the truncation honest when every term vanished.
                if acc.is_zero() {
                    acc = Series::constant(Q::zero(), c.order().saturating_sub(1));
                }
                acc
            })
            .collect();
        LocalExpansion { space: self.space.clone(), x: self.x.clone(), y: self.y.clone(), comps }
    }

    pub fn dbar(&self, i: usize) -> Self {
        let fields = dbar_fields(&self.space, &self.x, &self.y);
        self.along(&fields[i])
    }

    /// All `D̄_i` at once, sharing the Bergman operator.
    pub fn dbar_all(&self) -> Vec<Self> {
        dbar_fields(&self.space, &self.x, &self.y).iter().map(|d| self.along(d)).collect()
    }

    /// `(k, D̄_k G)` for `k ≥ start`.
    pub(crate) fn dbar_from(&self, start: usize) -> Vec<(usize, Self)> {
        let fields = dbar_fields(&self.space, &self.x, &self.y);
        fields.iter().enumerate().skip(start).map(|(k, d)| (k, self.along(d))).collect()
    }

    pub fn delta(&self, l: usize) -> Self {
        self.along(&delta_field(&self.space, &self.y, l))
    }

    /// Coefficient of `(x − x0)^a (y − y0)^b` in each component.
    pub fn coefficient(&self, a: &[u32], b: &[u32]) -> Vec<Q> {
        let mut e = a.to_vec();
        e.extend_from_slice(b);
        self.comps.iter().map(|c| c.coefficient(&e)).collect()
    }

    pub fn map_components(&self, f: impl Fn(&Series) -> Series) -> Self {
        LocalExpansion {
            space: self.space.clone(),
            x: self.x.clone(),
            y: self.y.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }
}
