//! Named identities of the Jordan kernel, each checked at one seeded sample.
//!
//! A check returns `Err(description)` with the counterexample on failure. The
//! same shape is used by the other crates so suites can be assembled freely.

use hermsym_exact::{Matrix, Sampler, Q};
use num_traits::Zero;

use crate::algebra::GElement;
use crate::space::SpaceDescriptor;

pub type CheckResult = std::result::Result<(), String>;
pub type Check = fn(&SpaceDescriptor, &mut Sampler) -> CheckResult;

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub check: Check,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name)
    }
}

/// `Err` with both sides rendered when they differ.
pub fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, lhs: T, rhs: T) -> CheckResult {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: {lhs:?} != {rhs:?}"))
    }
}

pub fn show(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Real and positive.
pub fn is_positive(c: &Q) -> bool {
    c.is_positive_real()
}

/// All leading principal minors real and positive.
pub fn leading_minors_positive(m: &Matrix<Q>) -> bool {
    (1..=m.rows()).all(|k| is_positive(&Matrix::from_fn(k, k, |i, j| m[(i, j)].clone()).det()))
}

fn quasi_inverse_definition(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let (x, y) = s.sample_pair(rng);
    let xy = s.quasi_inverse(&x, &y).map_err(|e| e.to_string())?;
    let rhs: Vec<Q> = x.iter().zip(s.q_apply(&x, &y)).map(|(a, b)| a - &b).collect();
    expect_eq(&format!("B(x,y)x^y at x={} y={}", show(&x), show(&y)), s.bergman(&x, &y).mul_vec(&xy), rhs)
}

fn symmetry_formula(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let (x, y) = s.sample_pair(rng);
    let xy = s.quasi_inverse(&x, &y).map_err(|e| e.to_string())?;
    let yx = s.quasi_inverse_minus(&y, &x).map_err(|e| e.to_string())?;
    let rhs: Vec<Q> = x.iter().zip(s.q_apply(&x, &yx)).map(|(a, b)| a + &b).collect();
    expect_eq(&format!("x^y vs x + Q_x(y^x) at x={} y={}", show(&x), show(&y)), xy, rhs)
}

fn det_bergman_power(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let (x, y) = (rng.vector(s.dim()), rng.vector(s.dim()));
    expect_eq(
        &format!("Det B vs Δ^p at x={} y={}", show(&x), show(&y)),
        s.bergman(&x, &y).det(),
        s.generic_norm(&x, &y).pow(s.genus() as u32),
    )
}

fn triple(s: &SpaceDescriptor, rng: &mut Sampler) -> [GElement; 3] {
    [s.sample_element(rng), s.sample_element(rng), s.sample_element(rng)]
}

fn jacobi(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let [x, y, z] = triple(s, rng);
    let b = |a: &GElement, c: &GElement| s.bracket(a, c).map_err(|e| e.to_string());
    let sum = b(&b(&x, &y)?, &z)?.add(&b(&b(&y, &z)?, &x)?).add(&b(&b(&z, &x)?, &y)?);
    if sum.is_zero() {
        Ok(())
    } else {
        Err(format!("Jacobi sum {sum:?} for {x:?}, {y:?}, {z:?}"))
    }
}

fn killing_invariance(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let [x, y, z] = triple(s, rng);
    let e = |r: crate::Result<Q>| r.map_err(|e| e.to_string());
    let lhs = e(s.killing_form(&s.bracket(&x, &y).map_err(|e| e.to_string())?, &z))?;
    let rhs = e(s.killing_form(&y, &s.bracket(&x, &z).map_err(|e| e.to_string())?))?;
    expect_eq("κ([X,Y],Z) + κ(Y,[X,Z])", lhs + rhs, Q::zero())
}

fn cartan_automorphism(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let x = s.sample_element(rng);
    let y = s.sample_element(rng);
    let th = |a: &GElement| s.cartan_involution(a).map_err(|e| e.to_string());
    let b = |a: &GElement, c: &GElement| s.bracket(a, c).map_err(|e| e.to_string());
    expect_eq("ϑ²", th(&th(&x)?)?, x.clone())?;
    expect_eq("ϑ[X,Y] vs [ϑX,ϑY]", th(&b(&x, &y)?)?, b(&th(&x)?, &th(&y)?)?)
}

fn vf_homomorphism(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let x = s.sample_element(rng);
    let y = s.sample_element(rng);
    let z = rng.vector(s.dim());
    let sign = Q::from(s.vf_sign() as i64);
    let xy = s.bracket(&x, &y).map_err(|e| e.to_string())?;
    let abs: Vec<Q> = s.vf_eval(&xy, &z).into_iter().map(|c| c * &sign).collect();
    expect_eq("vector-field bracket", s.vf_bracket_at(&x, &y, &z), abs)
}

fn triple_is_double_bracket(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let (x, y, z) = (rng.vector(n), rng.vector(n), rng.vector(n));
    let xy = s.bracket(&GElement::plus(x.clone()), &GElement::minus(y.clone())).map_err(|e| e.to_string())?;
    let xyz = s.bracket(&xy, &GElement::plus(z.clone())).map_err(|e| e.to_string())?;
    // [[x,y],z] is a constant field; read it through the realization.
    let field: Vec<Q> = s.vf_eval(&xyz, &rng.vector(n)).into_iter().map(|c| -c).collect();
    expect_eq("D_{x,y}z vs −[[x,y],z]", s.d_op(&x, &y).mul_vec(&z), field)
}

fn inner_product_positive(s: &SpaceDescriptor, _rng: &mut Sampler) -> CheckResult {
    if s.gram() != &s.gram().adjoint() {
        return Err("Gram matrix of (·|·) is not Hermitian".into());
    }
    if !leading_minors_positive(s.gram()) {
        return Err("Gram matrix of (·|·) has a non-positive leading minor".into());
    }
    Ok(())
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { name: "quasi-inverse definition", check: quasi_inverse_definition },
        Property { name: "symmetry formula", check: symmetry_formula },
        Property { name: "Det B = Δ^p", check: det_bergman_power },
        Property { name: "Jacobi identity", check: jacobi },
        Property { name: "κ invariance", check: killing_invariance },
        Property { name: "ϑ automorphism and involution", check: cartan_automorphism },
        Property { name: "vector-field realization", check: vf_homomorphism },
        Property { name: "{x,y,z} = −[[x,y],z]", check: triple_is_double_bracket },
        Property { name: "inner product positive definite", check: inner_product_positive },
    ]
}
