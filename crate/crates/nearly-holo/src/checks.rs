//! Identities of the nearly holomorphic calculus, each checked at one seeded
//! sample.

use std::sync::Arc;

use hermsym_exact::{Expr, Matrix, Monomial, MultiPoly, Sampler, Q};
use hermsym_jordan::checks::{expect_eq, show, CheckResult, Property};
use hermsym_jordan::{make_space, GElement, SpaceDescriptor};
use hermsym_roots::signatures;
use num_traits::Zero;

use crate::action::{
    check_structure_group, exp_by, group_action, lie_action, lie_commutator, translate_by, GroupElement,
};
use crate::form::{hwv_section, Bundle, NHForm};
use crate::section::{dbar_analytic, dbar_op, delta_op, LocalExpansion, PolarizedSection};
use crate::taylor::{check_roundtrip, taylor_coefficients};

/// Attempts before a check gives up on finding an evaluable sample.
const RESAMPLE: usize = 50;

pub(crate) fn arc(s: &SpaceDescriptor) -> Arc<SpaceDescriptor> {
    make_space(s.spec()).expect("a descriptor exists for its own spec")
}

fn neg(v: &[Q]) -> Vec<Q> {
    v.iter().map(|c| -c.clone()).collect()
}

/// A point with `Δ(z, −z̄) ≠ 0`, so the metric is invertible there.
pub fn diagonal_point(s: &SpaceDescriptor, rng: &mut Sampler) -> Vec<Q> {
    loop {
        let z = rng.vector(s.dim());
        if !s.generic_norm(&z, &neg(&s.conjugate(&z))).is_zero() {
            return z;
        }
    }
}

/// A random polynomial in `(x, y)` with `terms` monomials of degree `≤ max`.
pub fn random_polynomial(n: usize, rng: &mut Sampler, terms: usize, max: u32) -> MultiPoly<Q> {
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let mut e = vec![0u16; 2 * n];
        for _ in 0..rng.range(0, max as i64) {
            e[rng.index(2 * n)] += 1;
        }
        p.add_term(Monomial::new(e), rng.nonzero());
    }
    p
}

/// A random polarized section of the given bundle, polynomial in `(x, y)`.
pub fn random_polarized(s: &SpaceDescriptor, bundle: Bundle, rng: &mut Sampler) -> PolarizedSection {
    let comps = (0..bundle.fibre_dim(s.dim())).map(|_| Expr::poly(random_polynomial(s.dim(), rng, 4, 3))).collect();
    PolarizedSection::new(arc(s), bundle, comps).expect("fibre dimension matches")
}

/// Runs `attempt` until it returns a verdict; `None` means the sample hit a
/// pole and is redrawn.
fn resampled(rng: &mut Sampler, mut attempt: impl FnMut(&mut Sampler) -> Option<CheckResult>) -> CheckResult {
    for _ in 0..RESAMPLE {
        if let Some(r) = attempt(rng) {
            return r;
        }
    }
    Err(format!("no evaluable sample in {RESAMPLE} draws"))
}

fn dbar_q_is_delta(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let z = diagonal_point(s, rng);
    for k in 0..n {
        let q = PolarizedSection::q_coordinate(arc(s), k);
        let d = dbar_analytic(&q, &z).map_err(|e| e.to_string())?;
        for (l, dl) in d.iter().enumerate() {
            let expect = if l == k { Q::from(1) } else { Q::zero() };
            expect_eq(&format!("D̄_{l} q_{k} at z={}", show(&z)), dl[0].clone(), expect)?;
        }
    }
    Ok(())
}

fn operators_commute(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let f = random_polarized(s, Bundle::Scalar, rng);
    let z = diagonal_point(s, rng);
    let e = LocalExpansion::at(&f, &z, 3).map_err(|e| e.to_string())?;
    let dbars = e.dbar_all();
    let deltas: Vec<LocalExpansion> = (0..n).map(|l| e.delta(l)).collect();
    let at = format!("z={}", show(&z));
    for k in 0..n {
        for l in 0..n {
            if l > k {
                let c = dbars[k].dbar(l).value()[0].clone() - dbars[l].dbar(k).value()[0].clone();
                expect_eq(&format!("[D̄_{k}, D̄_{l}] at {at}"), c, Q::zero())?;
                let c = deltas[k].delta(l).value()[0].clone() - deltas[l].delta(k).value()[0].clone();
                expect_eq(&format!("[δ_{k}, δ_{l}] at {at}"), c, Q::zero())?;
            }
            let c = dbars[k].delta(l).value()[0].clone() - deltas[l].dbar(k).value()[0].clone();
            expect_eq(&format!("[D̄_{k}, δ_{l}] at {at}"), c, Q::zero())?;
        }
    }
    Ok(())
}

fn random_form(s: &SpaceDescriptor, rng: &mut Sampler) -> NHForm {
    let bundle = random_bundle(rng);
    NHForm::random(arc(s), bundle, rng, 3, 2, 2)
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut i = vec![0; n];
    i[k] = 1;
    i
}

fn symbolic_matches_analytic(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let f = random_form(s, rng);
    let z = diagonal_point(s, rng);
    let analytic = dbar_analytic(&f.polarize(), &z).map_err(|e| e.to_string())?;
    for (k, a) in analytic.into_iter().enumerate() {
        let symbolic = f.dbar_symbolic(&unit(n, k)).evaluate(&z);
        expect_eq(&format!("analytic vs symbolic D̄_{k} at z={}", show(&z)), a, symbolic)?;
    }
    Ok(())
}

fn kernel_of_dbar_power(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let f = random_form(s, rng);
    let m = f.degree();
    // Symbolically, every index of weight m + 1 kills f.
    let mut i = vec![0u32; n];
    for _ in 0..=m {
        i[rng.index(n)] += 1;
    }
    if !f.dbar_symbolic(&i).is_zero() {
        return Err(format!("symbolic D̄^{i:?} of a degree-{m} form is nonzero"));
    }
    // Analytically along the same index.
    let z = diagonal_point(s, rng);
    let mut e = LocalExpansion::antiholomorphic_at(&f.polarize(), &z, m + 2).map_err(|e| e.to_string())?;
    for (k, &ik) in i.iter().enumerate() {
        for _ in 0..ik {
            e = e.dbar(k);
        }
    }
    expect_eq(&format!("analytic D̄^{i:?} at z={}", show(&z)), e.value(), vec![Q::zero(); e.value().len()])
}

fn delta_kills_q(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let z = diagonal_point(s, rng);
    for k in 0..n {
        let q = PolarizedSection::q_coordinate(arc(s), k);
        for l in 0..n {
            let d = delta_op(&q, l).eval(&z).map_err(|e| e.to_string())?;
            expect_eq(&format!("δ_{l} q_{k} at z={}", show(&z)), d[0].clone(), Q::zero())?;
        }
    }
    Ok(())
}

fn delta_differentiates_coefficients(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let f = random_form(s, rng);
    let l = rng.index(n);
    let z = diagonal_point(s, rng);
    let lhs = delta_op(&f.polarize(), l).eval(&z).map_err(|e| e.to_string())?;
    let mut g = NHForm::zero(arc(s), f.bundle());
    for (i, coeffs) in f.terms() {
        g.add_term(i.clone(), coeffs.iter().map(|p| p.partial(l)).collect());
    }
    expect_eq(&format!("δ_{l} F vs Σ ∂_{l}f_i q^i at z={}", show(&z)), lhs, g.evaluate(&z))
}

fn taylor_roundtrip_exact(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let f = random_form(s, rng);
    let pf = f.polarize();
    let table = taylor_coefficients(&pf, 2, 2).map_err(|e| e.to_string())?;
    if table.reconstruction != f {
        return Err(format!("reconstructed {:?} from {:?}", table.reconstruction.terms(), f.terms()));
    }
    check_roundtrip(&pf, &table, rng.range(0, 1 << 30) as u64, 5).map_err(|e| e.to_string())
}

fn random_bundle(rng: &mut Sampler) -> Bundle {
    if rng.index(2) == 0 {
        Bundle::Scalar
    } else {
        Bundle::Tangent
    }
}

fn lie_representation(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let f = random_polarized(s, random_bundle(rng), rng);
    let (y1, y2) = (s.sample_element(rng), s.sample_element(rng));
    let br = s.bracket(&y1, &y2).map_err(|e| e.to_string())?;
    let z = diagonal_point(s, rng);
    let lhs = lie_commutator(s, &y1, &y2, &f).map_err(|e| e.to_string())?.eval(&z).map_err(|e| e.to_string())?;
    let rhs = lie_action(s, &br, &f).map_err(|e| e.to_string())?.eval(&z).map_err(|e| e.to_string())?;
    expect_eq(&format!("[dπ(Y1), dπ(Y2)] vs dπ([Y1,Y2]) ({}) at z={}", f.bundle().name(), show(&z)), lhs, rhs)
}

fn dbar_components(f: &PolarizedSection) -> PolarizedSection {
    let comps = (0..f.space().dim()).map(|i| dbar_op(f, i).exprs()[0].clone()).collect();
    PolarizedSection::new(f.space().clone(), Bundle::Tangent, comps).expect("n components")
}

fn dbar_invariance(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let f = NHForm::random(arc(s), Bundle::Scalar, rng, 2, 2, 1).polarize();
    let df = dbar_components(&f);
    resampled(rng, |rng| {
        let w = rng.vector(s.dim());
        let z = diagonal_point(s, rng);
        let g = GroupElement::Exp(w.clone());
        let moved = group_action(s, &g, &f).ok()?;
        let lhs: Vec<Q> = dbar_analytic(&moved, &z).ok()?.into_iter().map(|v| v[0].clone()).collect();
        let rhs = group_action(s, &g, &df).ok()?.eval(&z).ok()?;
        Some(expect_eq(&format!("D̄π(exp w)F vs π(exp w)D̄F at w={} z={}", show(&w), show(&z)), lhs, rhs))
    })
}

/// `d/dt π(exp tv)F` and `d/dt π(exp tw)F` at `t = 0` against `dπ`.
fn infinitesimal_consistency(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let n = s.dim();
    let f = random_polarized(s, random_bundle(rng), rng);
    let v = rng.vector(n);
    let t = Expr::var(2 * n);
    let tv: Vec<Expr> = v.iter().map(|c| t.clone() * Expr::constant(c.clone())).collect();
    let z = diagonal_point(s, rng);
    let mut pt = z.clone();
    pt.extend(s.conjugate(&z));
    pt.push(Q::zero());
    let velocity = |g: &PolarizedSection| -> Result<Vec<Q>, String> {
        let e: Vec<Expr> = g.exprs().iter().map(|e| e.partial(2 * n)).collect();
        Expr::eval_many(&e, &pt).map_err(|e| e.to_string())
    };
    let zero = Matrix::zeros(n, n);
    let at = format!("v={} z={}", show(&v), show(&z));
    let plus = GElement { v: v.clone(), t: zero.clone(), w: vec![Q::zero(); n] };
    let lie = |y: &GElement| -> Result<Vec<Q>, String> {
        lie_action(s, y, &f).map_err(|e| e.to_string())?.eval(&z).map_err(|e| e.to_string())
    };
    expect_eq(&format!("translation velocity at {at}"), velocity(&translate_by(s, &tv, &f))?, lie(&plus)?)?;
    let minus = GElement { v: vec![Q::zero(); n], t: zero, w: v.clone() };
    expect_eq(&format!("exp velocity at {at}"), velocity(&exp_by(s, &tv, &f))?, lie(&minus)?)
}

fn exp_is_additive(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let f = random_polarized(s, random_bundle(rng), rng);
    resampled(rng, |rng| {
        let (w1, w2) = (rng.vector(s.dim()), rng.vector(s.dim()));
        let sum: Vec<Q> = w1.iter().zip(&w2).map(|(a, b)| a + b).collect();
        let z = diagonal_point(s, rng);
        let inner = group_action(s, &GroupElement::Exp(w2.clone()), &f).ok()?;
        let lhs = group_action(s, &GroupElement::Exp(w1.clone()), &inner).ok()?.eval(&z).ok()?;
        let rhs = group_action(s, &GroupElement::Exp(sum), &f).ok()?.eval(&z).ok()?;
        Some(expect_eq(&format!("π(exp w1)π(exp w2) vs π(exp(w1+w2)) at z={}", show(&z)), lhs, rhs))
    })
}

fn sample_levi(s: &SpaceDescriptor, rng: &mut Sampler) -> Matrix<Q> {
    let (a, b) = s.sample_pair(rng);
    s.bergman(&a, &b)
}

fn levi_action(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let f = random_polarized(s, random_bundle(rng), rng);
    let (h1, h2) = (sample_levi(s, rng), sample_levi(s, rng));
    check_structure_group(s, &h1).map_err(|e| e.to_string())?;
    let z = diagonal_point(s, rng);
    let act = |h: &Matrix<Q>, g: &PolarizedSection| group_action(s, &GroupElement::Levi(h.clone()), g);
    let lhs = act(&h1, &act(&h2, &f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let rhs = act(&h1.mul(&h2), &f).map_err(|e| e.to_string())?;
    let ev = |g: PolarizedSection| g.eval(&z).map_err(|e| e.to_string());
    expect_eq(&format!("π(h1)π(h2) vs π(h1h2) at z={}", show(&z)), ev(lhs)?, ev(rhs)?)
}

fn hwv_delta_closed(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let sigs = signatures(s.rank(), 3);
    let m = sigs[rng.index(sigs.len())].clone();
    let f = hwv_section(arc(s), &m).map_err(|e| e.to_string())?;
    let total: u32 = m.iter().sum();
    expect_eq(&format!("degree of f_{m:?}"), f.degree(), total as usize)?;
    let pf = f.polarize();
    let z = diagonal_point(s, rng);
    for l in 0..s.dim() {
        expect_eq(
            &format!("δ_{l} f_{m:?} at z={}", show(&z)),
            delta_op(&pf, l).eval(&z).map_err(|e| e.to_string())?,
            vec![Q::zero()],
        )?;
    }
    Ok(())
}

fn degree_filtration(s: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    let f = NHForm::random(arc(s), Bundle::Scalar, rng, 2, 2, 1);
    let g = random_form(s, rng);
    let fg = f.multiply(&g).map_err(|e| e.to_string())?;
    if !f.is_zero() && !g.is_zero() {
        expect_eq("deg(fg) vs deg f + deg g", fg.degree(), f.degree() + g.degree())?;
    }
    let z = diagonal_point(s, rng);
    let prod: Vec<Q> = g.evaluate(&z).into_iter().map(|c| c * &f.evaluate(&z)[0]).collect();
    expect_eq(&format!("(fg)(z) vs f(z)g(z) at z={}", show(&z)), fg.evaluate(&z), prod)
}

/// The Cauchy-Riemann calculus.
pub fn properties() -> Vec<Property> {
    vec![
        Property { name: "D̄_l q_k = δ_lk", check: dbar_q_is_delta },
        Property { name: "D̄ and δ commute", check: operators_commute },
        Property { name: "symbolic and analytic D̄ agree", check: symbolic_matches_analytic },
        Property { name: "D̄^(deg+1) annihilates forms", check: kernel_of_dbar_power },
        Property { name: "δ annihilates q", check: delta_kills_q },
        Property { name: "δ differentiates coefficients", check: delta_differentiates_coefficients },
        Property { name: "Taylor roundtrip", check: taylor_roundtrip_exact },
        Property { name: "degree filtration", check: degree_filtration },
        Property { name: "highest weight sections are δ-closed", check: hwv_delta_closed },
    ]
}

/// Local group and Lie algebra actions.
pub fn lie_properties() -> Vec<Property> {
    vec![
        Property { name: "dπ is a representation", check: lie_representation },
        Property { name: "group action integrates dπ", check: infinitesimal_consistency },
        Property { name: "D̄ intertwines π(exp w)", check: dbar_invariance },
        Property { name: "π(exp w1)π(exp w2) = π(exp(w1+w2))", check: exp_is_additive },
        Property { name: "Levi factors act as a group", check: levi_action },
    ]
}
