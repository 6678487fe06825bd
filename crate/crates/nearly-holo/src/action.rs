//! Local action of `G` and of `g = u^ℂ` on polarized sections.

use hermsym_exact::{Expr, Matrix, Q};
use hermsym_jordan::{GElement, SpaceDescriptor};

use num_traits::Zero;

use crate::error::{NhError, Result};
use crate::form::Bundle;
use crate::section::{lift, x_vars, y_vars, PolarizedSection};

/// Group elements with an explicit local action.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    /// `exp v`, `v ∈ n⁺`.
    Translation(Vec<Q>),
    /// `h ∈ L` through its action on `n⁺`.
    Levi(Matrix<Q>),
    /// `exp w`, `w ∈ n⁻`.
    Exp(Vec<Q>),
}

/// Action of `h` on `n⁻` compatible with the triple product, `(h^κ)⁻¹`.
fn levi_minus(s: &SpaceDescriptor, h: &Matrix<Q>) -> Result<Matrix<Q>> {
    s.kappa_adjoint(h).inverse().map_err(|_| NhError::NotInStructureGroup("singular".into()))
}

/// Whether `h{a,b,c} = {ha, h̃b, hc}` with `h̃ = (h^κ)⁻¹`, checked as
/// `h D(a,b) = D(ha, h̃b) h` on basis vectors.
pub fn check_structure_group(s: &SpaceDescriptor, h: &Matrix<Q>) -> Result<()> {
    let n = s.dim();
    if h.rows() != n || !h.is_square() {
        return Err(NhError::NotInStructureGroup(format!("expected a {n}×{n} matrix")));
    }
    h.inverse().map_err(|_| NhError::NotInStructureGroup("singular".into()))?;
    let hm = levi_minus(s, h)?;
    let basis: Vec<Vec<Q>> = (0..n).map(|l| s.basis_vector(l)).collect();
    let images: Vec<Vec<Q>> = basis.iter().map(|e| h.mul_vec(e)).collect();
    let images_minus: Vec<Vec<Q>> = basis.iter().map(|e| hm.mul_vec(e)).collect();
    for a in 0..n {
        for b in 0..n {
            let lhs = h.mul(&s.d_op(&basis[a], &basis[b]));
            let rhs = s.d_op(&images[a], &images_minus[b]).mul(h);
            if lhs != rhs {
                return Err(NhError::NotInStructureGroup(format!(
                    "the triple product is not preserved on basis vectors ({a}, {b})"
                )));
            }
        }
    }
    Ok(())
}

fn lift_matrix(m: &Matrix<Q>) -> Matrix<Expr> {
    m.map(|c| Expr::constant(c.clone()))
}

/// `π(g)F` on a polarized section.
///
/// `g` acts on the x-slot by its Möbius action and on the y-slot through the
/// holomorphic extension of the action on `z̄`, so the result is again
/// holomorphic in `(x, y)` and integrates [`lie_action`]. On sections without
/// y-dependence this is `F(z − v)`, `ρ(h)F(h⁻¹z)` and `ρ(B(z,−w))F(z^{−w})`.
pub fn group_action(s: &SpaceDescriptor, g: &GroupElement, f: &PolarizedSection) -> Result<PolarizedSection> {
    match g {
        GroupElement::Translation(v) => Ok(translate_by(s, &lift(v), f)),
        GroupElement::Levi(h) => {
            check_structure_group(s, h)?;
            let n = s.dim();
            let (x, y) = (x_vars(n), y_vars(n));
            // x ↦ h⁻¹x, y ↦ h̃⁻¹y = h^κ y.
            let hinv = h.inverse().expect("checked above");
            let mut subs = lift_matrix(&hinv).mul_vec(&x);
            subs.extend(lift_matrix(&s.kappa_adjoint(h)).mul_vec(&y));
            let moved = Expr::substitute_many(f.exprs(), &subs);
            Ok(f.with_exprs(apply_rho(f.bundle(), &lift_matrix(h), moved)))
        }
        GroupElement::Exp(w) => Ok(exp_by(s, &lift(w), f)),
    }
}

/// `(π(g)F)(z)`, with `NotQuasiInvertible` when `g` is not defined at `z`.
pub fn group_action_at(s: &SpaceDescriptor, g: &GroupElement, f: &PolarizedSection, z: &[Q]) -> Result<Vec<Q>> {
    let zb = s.conjugate(z);
    let neg = |v: &[Q]| -> Vec<Q> { v.iter().map(|c| -c.clone()).collect() };
    let pole = match g {
        GroupElement::Translation(v) => s.generic_norm(&neg(v), &zb).is_zero(),
        GroupElement::Exp(w) => s.generic_norm(z, &neg(w)).is_zero(),
        GroupElement::Levi(_) => false,
    };
    if pole {
        return Err(NhError::NotQuasiInvertible(format!("{g:?} at z = {z:?}")));
    }
    group_action(s, g, f)?.eval(z)
}

fn apply_rho(bundle: Bundle, rho: &Matrix<Expr>, moved: Vec<Expr>) -> Vec<Expr> {
    match bundle {
        Bundle::Scalar => moved,
        Bundle::Tangent => rho.mul_vec(&moved),
    }
}

/// `x ↦ x − v`, `y ↦ y^{−v}` for a symbolic `v`.
pub(crate) fn translate_by(s: &SpaceDescriptor, v: &[Expr], f: &PolarizedSection) -> PolarizedSection {
    let n = s.dim();
    let (x, y) = (x_vars(n), y_vars(n));
    let mv: Vec<Expr> = v.iter().map(|c| -c.clone()).collect();
    let by = s.bergman_minus(&y, &mv);
    let rhs_y: Vec<Expr> = y.iter().zip(s.q_apply_minus(&y, &mv)).map(|(a, b)| a.clone() - b).collect();
    let mut subs: Vec<Expr> = x.iter().zip(v).map(|(a, c)| a.clone() - c).collect();
    subs.extend(Expr::solve(&by, &rhs_y));
    f.with_exprs(Expr::substitute_many(f.exprs(), &subs))
}

/// `x ↦ x^{−w}`, `y ↦ y − w`, with `ρ(B(x, −w))`, for a symbolic `w`.
pub(crate) fn exp_by(s: &SpaceDescriptor, w: &[Expr], f: &PolarizedSection) -> PolarizedSection {
    let n = s.dim();
    let (x, y) = (x_vars(n), y_vars(n));
    let mw: Vec<Expr> = w.iter().map(|c| -c.clone()).collect();
    let bx = s.bergman(&x, &mw);
    let rhs_x: Vec<Expr> = x.iter().zip(s.q_apply(&x, &mw)).map(|(a, b)| a.clone() - b).collect();
    let mut subs = Expr::solve(&bx, &rhs_x);
    subs.extend(y.iter().zip(w).map(|(a, c)| a.clone() - c));
    let moved = Expr::substitute_many(f.exprs(), &subs);
    f.with_exprs(apply_rho(f.bundle(), &bx, moved))
}

/// `dπ(Y)F = −∂_{ξ}F − ∂̄_{η}F + dρ(Y)F` with `ξ = v + Tx + Q_x w`,
/// `η = w + T⁻y + Q_y v`, and `dρ(Y) = T + D_{x,w}` on the tangent bundle.
pub fn lie_action(s: &SpaceDescriptor, y_el: &GElement, f: &PolarizedSection) -> Result<PolarizedSection> {
    s.check_element(y_el).map_err(|e| NhError::NotInL(e.to_string()))?;
    let n = s.dim();
    let (x, y) = (x_vars(n), y_vars(n));
    let xi: Vec<Expr> = s.vf_eval(y_el, &x);
    let tminus = s.minus_action(&lift_matrix(&y_el.t));
    let w: Vec<Expr> = lift(&y_el.w);
    let v: Vec<Expr> = lift(&y_el.v);
    let ty = tminus.mul_vec(&y);
    let qyv = s.q_apply_minus(&y, &v);
    let eta: Vec<Expr> = (0..n).map(|k| w[k].clone() + ty[k].clone() + qyv[k].clone()).collect();
    let mut dir: Vec<Expr> = xi.into_iter().map(|e| -e).collect();
    dir.extend(eta.into_iter().map(|e| -e));
    let moved = Expr::directional_many(f.exprs(), &dir);
    let exprs = match f.bundle() {
        Bundle::Scalar => moved,
        Bundle::Tangent => {
            let rho = lift_matrix(&y_el.t).add(&s.d_op(&x, &w));
            let extra = rho.mul_vec(f.exprs());
            moved.into_iter().zip(extra).map(|(a, b)| a + b).collect()
        }
    };
    Ok(f.with_exprs(exprs))
}

/// `[dπ(Y1), dπ(Y2)]F`.
pub fn lie_commutator(
    s: &SpaceDescriptor,
    y1: &GElement,
    y2: &GElement,
    f: &PolarizedSection,
) -> Result<PolarizedSection> {
    let a = lie_action(s, y1, &lie_action(s, y2, f)?)?;
    let b = lie_action(s, y2, &lie_action(s, y1, f)?)?;
    Ok(a.sub(&b))
}
