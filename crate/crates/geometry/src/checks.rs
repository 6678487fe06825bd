//! Geometry identities, each checked at one seeded point.

use hermsym_exact::{Sampler, Q};
use hermsym_jordan::checks::{expect_eq, leading_minors_positive, show, CheckResult, Property};
use hermsym_jordan::SpaceDescriptor;

use crate::*;

fn err(e: hermsym_jordan::JordanError) -> String {
    e.to_string()
}

fn gradient(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let z = rng.vector(s.dim());
    let q = q_map(s, &z);
    for l in 0..s.dim() {
        let c = s.basis_vector(l);
        expect_eq(
            &format!("∂_{l}Ψ vs −κ(c_{l}, q(z)) at z={}", show(&z)),
            potential_gradient(s, &z, &c),
            -s.kappa(&c, &q),
        )?;
    }
    Ok(())
}

fn hessian(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let (z, v, w) = (rng.vector(n), rng.vector(n), rng.vector(n));
    expect_eq(
        &format!("∂̄_w∂_vΨ vs h_z(v,w) at z={} v={} w={}", show(&z), show(&v), show(&w)),
        potential_hessian(s, &z, &v, &w),
        metric(s, &z, &v, &w),
    )
}

fn q_derivative_closed_forms(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let (z, v, w) = (rng.vector(n), rng.vector(n), rng.vector(n));
    let jets = q_derivatives(s, &z, &v, &w).map_err(err)?;
    expect_eq(&format!("q-derivatives at z={}", show(&z)), jets, q_derivatives_closed(s, &z, &v, &w))
}

fn q_vanishing_check(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let (z, v) = (rng.vector(n), rng.vector(n));
    expect_eq(
        &format!("(∂_v + ∂̄_(Q_z̄ v)) q at z={}", show(&z)),
        q_vanishing(s, &z, &v).map_err(err)?,
        vec![Q::from(0); n],
    )
}

fn omega_conjugation(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let y = s.sample_element(rng);
    let z = rng.vector(s.dim());
    let lhs = omega_local(s, &y, &z).map_err(err)?.conj();
    let minus_theta = s.cartan_involution(&y).map_err(err)?.scale(&Q::from(-1));
    expect_eq(&format!("conj ω(Y) vs ω(−ϑY) at z={}", show(&z)), lhs, omega_local(s, &minus_theta, &z).map_err(err)?)
}

fn omega_is_killing_pairing(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let y = s.sample_element(rng);
    let z = rng.vector(s.dim());
    let shift = adjoint_shift(s, &z);
    expect_eq(
        &format!("ω(Y)(z) vs κ(Y, Ad_(u_z) Z_0) at z={}", show(&z)),
        omega_local(s, &y, &z).map_err(err)?,
        s.killing_form(&y, &shift).map_err(err)?,
    )
}

fn trace_identity(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let (z, v) = (rng.vector(n), rng.vector(n));
    let (lhs, rhs) = log_det_trace(s, &z, &v);
    expect_eq(&format!("Tr B⁻¹∂_vB vs Tr D_(v,q) at z={}", show(&z)), lhs, rhs)
}

fn bergman_positive(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let z = rng.vector(s.dim());
    let m = bergman_gram(s, &z);
    if m != m.adjoint() || !leading_minors_positive(&m) {
        return Err(format!("B(z,−z̄) not positive definite at z={}", show(&z)));
    }
    Ok(())
}

fn metric_hermitian(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let (z, v, w) = (rng.vector(n), rng.vector(n), rng.vector(n));
    expect_eq(
        &format!("h_z(v,w) vs conj h_z(w,v) at z={}", show(&z)),
        metric(s, &z, &v, &w),
        metric(s, &z, &w, &v).conj(),
    )
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { name: "∂_vΨ = −κ(v, q(z))", check: gradient },
        Property { name: "∂̄_w∂_vΨ = h_z(v,w)", check: hessian },
        Property { name: "q-derivative closed forms", check: q_derivative_closed_forms },
        Property { name: "q is annihilated by ∂_v + ∂̄_(Q_z̄ v)", check: q_vanishing_check },
        Property { name: "ω conjugation", check: omega_conjugation },
        Property { name: "ω(Y) = κ(Y, Ad_(u_z) Z_0)", check: omega_is_killing_pairing },
        Property { name: "log-det trace identity", check: trace_identity },
        Property { name: "B(z,−z̄) positive definite", check: bergman_positive },
        Property { name: "metric Hermitian", check: metric_hermitian },
    ]
}
