//! The functions `ω(Y)` restricted to the chart, and the element `Ad_{u_z} Z_0`.

use hermsym_exact::Q;
use hermsym_jordan::{GElement, Result, SpaceDescriptor};

use crate::potential::{q_map, q_map_plus};

/// `ω(Y)(z) = 2 Tr₊T − κ(z, w) + κ(v − Tz + Q_z w, q(z))` for `Y = (v, T, w)`.
pub fn omega_local(s: &SpaceDescriptor, y: &GElement, z: &[Q]) -> Result<Q> {
    s.check_element(y)?;
    let tz = y.t.mul_vec(z);
    let qzw = s.q_apply(z, &y.w);
    let field: Vec<Q> = y.v.iter().zip(&tz).zip(&qzw).map(|((a, b), c)| a - b + c).collect();
    Ok(y.t.trace() * Q::from(2) - s.kappa(z, &y.w) + s.kappa(&field, &q_map(s, z)))
}

/// `Z_0 + (−z^{−z̄}, D_{z^{−z̄}, z̄}, z̄^{−z})`.
pub fn adjoint_shift(s: &SpaceDescriptor, z: &[Q]) -> GElement {
    let zp = q_map_plus(s, z);
    let t = s.d_op(&zp, &s.conjugate(z));
    GElement { v: zp.iter().map(|c| -c).collect(), t: hermsym_exact::Matrix::identity(s.dim()).add(&t), w: q_map(s, z) }
}
