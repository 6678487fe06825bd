//! Kähler potential, q-map and metric on the chart `n⁺ ⊆ X`.
//!
//! Functions of `(z, z̄)` are evaluated as functions of independent
//! `(x, y) ∈ n⁺ × n⁻` at `y = z̄`. Holomorphic derivatives are jets in the
//! x-slot, antiholomorphic ones jets in the y-slot.

use hermsym_exact::{Field, Jet, Matrix, Ring, Q};
use hermsym_jordan::{JordanError, Result, SpaceDescriptor};

fn neg<F: Ring>(v: &[F]) -> Vec<F> {
    v.iter().map(|c| -c.clone()).collect()
}

fn lift<F: Ring>(v: &[Q]) -> Vec<F> {
    v.iter().map(|c| F::from(c.clone())).collect()
}

/// `Ψ(z) = scale · log delta_value`, kept as its exact argument.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialValue {
    pub delta_value: Q,
    pub scale: u32,
}

/// Polarized q-map `q̃(x, y) = y^{−x}` over any field of scalars.
pub fn q_polarized_in<F: Field>(s: &SpaceDescriptor, x: &[F], y: &[F]) -> Option<Vec<F>> {
    s.quasi_inverse_minus_in(y, &neg(x))
}

pub fn q_polarized(s: &SpaceDescriptor, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
    s.quasi_inverse_minus(y, &neg(x))
}

/// `q(z) = z̄^{−z}`.
pub fn q_map(s: &SpaceDescriptor, z: &[Q]) -> Vec<Q> {
    // B(z̄, −z) is positive definite, so this never fails on the diagonal.
    q_polarized(s, z, &s.conjugate(z)).expect("(z̄, −z) is always quasi-invertible")
}

/// `z^{−z̄}`, the n⁺ companion of the q-map.
pub fn q_map_plus(s: &SpaceDescriptor, z: &[Q]) -> Vec<Q> {
    s.quasi_inverse(z, &neg(&s.conjugate(z))).expect("(z, −z̄) is always quasi-invertible")
}

/// `B(z, −z̄)`.
pub fn bergman_diagonal(s: &SpaceDescriptor, z: &[Q]) -> Matrix<Q> {
    s.bergman(z, &neg(&s.conjugate(z)))
}

pub fn kahler_potential(s: &SpaceDescriptor, z: &[Q]) -> PotentialValue {
    PotentialValue { delta_value: s.generic_norm(z, &neg(&s.conjugate(z))), scale: 2 * s.genus() as u32 }
}

/// `∂_vΨ(z) = 2p·∂_vΔ/Δ`, differentiated exactly with a jet along `v`.
pub fn potential_gradient(s: &SpaceDescriptor, z: &[Q], v: &[Q]) -> Q {
    let y: Vec<Jet<Q>> = lift(&neg(&s.conjugate(z)));
    let delta = s.generic_norm(&Jet::seed(z, v), &y);
    let two_p = Q::from(2 * s.genus() as i64);
    delta.deriv() / delta.value() * two_p
}

/// `∂̄_w∂_vΨ(z)`: a jet along `v` in the x-slot nested inside a jet along `w̄`
/// in the y-slot.
pub fn potential_hessian(s: &SpaceDescriptor, z: &[Q], v: &[Q], w: &[Q]) -> Q {
    let x: Vec<Jet<Jet<Q>>> =
        z.iter().zip(v).map(|(a, b)| Jet::new(Jet::constant(a.clone()), Jet::constant(b.clone()))).collect();
    // The y-slot carries −z̄ and moves along −w̄.
    let y: Vec<Jet<Jet<Q>>> =
        s.conjugate(z).iter().zip(s.conjugate(w)).map(|(a, b)| Jet::constant(Jet::new(-a, -b))).collect();
    let delta = s.generic_norm(&x, &y);
    let log_deriv = delta.deriv().clone() * &delta.value().inv().expect("Δ(z, −z̄) > 0");
    log_deriv.deriv() * &Q::from(2 * s.genus() as i64)
}

/// `h_z(v, w) = (B(z, −z̄)⁻¹ v | w)`.
pub fn metric(s: &SpaceDescriptor, z: &[Q], v: &[Q], w: &[Q]) -> Q {
    let bv = bergman_diagonal(s, z).solve(v).expect("B(z, −z̄) is invertible");
    s.inner(&bv, w)
}

/// `H_{ij} = h_z(c_i, c_j)`.
pub fn metric_matrix(s: &SpaceDescriptor, z: &[Q]) -> Matrix<Q> {
    let binv = bergman_diagonal(s, z).inverse().expect("B(z, −z̄) is invertible");
    binv.transpose().mul(s.gram())
}

/// `M_{ij} = (B(z, −z̄) c_i | c_j)`.
pub fn bergman_gram(s: &SpaceDescriptor, z: &[Q]) -> Matrix<Q> {
    bergman_diagonal(s, z).transpose().mul(s.gram())
}

/// Holomorphic and antiholomorphic derivatives of the q-map.
#[derive(Debug, Clone, PartialEq)]
pub struct QDerivatives {
    /// `∂_v q(z)`.
    pub holomorphic: Vec<Q>,
    /// `∂̄_w q(z)`, with `w ∈ n⁻` moving the y-slot.
    pub antiholomorphic: Vec<Q>,
}

fn derivs(v: Vec<Jet<Q>>) -> Vec<Q> {
    v.into_iter().map(|j| j.d).collect()
}

/// Directional derivative of `q̃` at `(x, y)` moving x along `dx` and y along `dy`.
pub fn q_polarized_derivative(s: &SpaceDescriptor, x: &[Q], y: &[Q], dx: &[Q], dy: &[Q]) -> Result<Vec<Q>> {
    q_polarized_in(s, &Jet::seed(x, dx), &Jet::seed(y, dy))
        .map(derivs)
        .ok_or_else(|| JordanError::NotQuasiInvertible { delta: Box::new(s.generic_norm(&neg(x), y)) })
}

/// `(∂_v q(z), ∂̄_w q(z))` by jets on the polarized map.
pub fn q_derivatives(s: &SpaceDescriptor, z: &[Q], v: &[Q], w: &[Q]) -> Result<QDerivatives> {
    let y = s.conjugate(z);
    let zero = vec![Q::from(0); s.dim()];
    Ok(QDerivatives {
        holomorphic: q_polarized_derivative(s, z, &y, v, &zero)?,
        antiholomorphic: q_polarized_derivative(s, z, &y, &zero, w)?,
    })
}

/// Closed forms `∂_v q = −B(z̄,−z)⁻¹ Q_{z̄} v` and `∂̄_w q = B(z̄,−z)⁻¹ w`.
pub fn q_derivatives_closed(s: &SpaceDescriptor, z: &[Q], v: &[Q], w: &[Q]) -> QDerivatives {
    let zb = s.conjugate(z);
    let b = s.bergman_minus(&zb, &neg(z));
    let solve = |rhs: &[Q]| b.solve(rhs).expect("B(z̄, −z) is invertible");
    QDerivatives { holomorphic: neg(&solve(&s.q_apply_minus(&zb, v))), antiholomorphic: solve(w) }
}

/// `(∂_v + ∂̄_{Q_{z̄} v}) q(z)`, which vanishes identically.
pub fn q_vanishing(s: &SpaceDescriptor, z: &[Q], v: &[Q]) -> Result<Vec<Q>> {
    let y = s.conjugate(z);
    let dy = s.q_apply_minus(&y, v);
    q_polarized_derivative(s, z, &y, v, &dy)
}

/// Both sides of `Tr(B(z,−z̄)⁻¹ ∂_v B(z,−z̄)) = Tr D_{v, z̄^{−z}}`, where
/// `∂_v B(z,−z̄) = D_{v,z̄} + Q_{v,z} Q_{z̄}`.
pub fn log_det_trace(s: &SpaceDescriptor, z: &[Q], v: &[Q]) -> (Q, Q) {
    let zb = s.conjugate(z);
    let db = s.d_op(v, &zb).add(&s.q2_op(v, z).mul(&s.q_op_minus(&zb)));
    let lhs = bergman_diagonal(s, z).inverse().expect("B(z, −z̄) is invertible").mul(&db).trace();
    let rhs = s.d_op(v, &q_map(s, z)).trace();
    (lhs, rhs)
}
