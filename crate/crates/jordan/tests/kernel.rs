use hermsym_exact::{Matrix, Sampler, Q};
use hermsym_jordan::{
    certify_delta, classical_catalogue, closed_form_delta, space, symbolic_det_bergman, GElement, JordanError,
    SpaceDescriptor,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Q {
    Q::ratio(a, b)
}

fn scalar(s: &SpaceDescriptor, c: Q) -> Vec<Q> {
    assert_eq!(s.dim(), 1);
    vec![c]
}

/// `m` with a single unit entry, as `n⁺` coordinates.
fn unit_plus(s: &SpaceDescriptor, i: usize, j: usize) -> Vec<Q> {
    let ((r, c), _) = s.shapes();
    let mut m = Matrix::zeros(r, c);
    m[(i, j)] = Q::one();
    s.from_matrix_plus(&m).unwrap()
}

fn unit_minus(s: &SpaceDescriptor, i: usize, j: usize) -> Vec<Q> {
    let (_, (r, c)) = s.shapes();
    let mut m = Matrix::zeros(r, c);
    m[(i, j)] = Q::one();
    s.from_matrix_minus(&m).unwrap()
}

#[test]
fn table_constants() {
    for (name, n, r, p) in [("I:2,3", 6, 2, 5), ("III:3", 6, 3, 4), ("IV:5", 5, 2, 5)] {
        let s = space(name).unwrap();
        assert_eq!((s.dim(), s.rank(), s.genus()), (n, r, p), "{name}");
        assert_eq!(s.frame().len(), r);
    }
    assert!(matches!(space("V"), Err(JordanError::UnsupportedSpace(_))));
    assert!(matches!(space("VI"), Err(JordanError::UnsupportedSpace(_))));
    assert!(matches!(space("I:0,3"), Err(JordanError::InvalidParams(_))));
}

#[test]
fn triple_product_examples() {
    let s = space("I:1,1").unwrap();
    let one = scalar(&s, Q::one());
    assert_eq!(s.triple(&one, &one, &one), vec![Q::from(2)]);
    assert_eq!(s.triple(&one, &[Q::zero()], &one), vec![Q::zero()]);

    let s = space("I:2,2").unwrap();
    let x = unit_plus(&s, 0, 0);
    let y = unit_minus(&s, 0, 0);
    let z = unit_plus(&s, 1, 1);
    assert!(s.triple(&x, &y, &z).iter().all(Zero::is_zero));
    assert!(s.triple_product(&x, &y, &[Q::one()]).is_err());
}

#[test]
fn bergman_examples() {
    let s = space("I:1,1").unwrap();
    assert_eq!(s.bergman(&[Q::one()], &[q(1, 2)]), Matrix::new(1, 1, vec![q(1, 4)]));
    assert!(s.bergman(&[Q::from(3)], &[Q::zero()]).is_identity());

    // Matrix models: B(x,y)z = (1 − xy) z (1 − yx).
    let s = space("I:2,2").unwrap();
    let mut rng = Sampler::new(11);
    for _ in 0..5 {
        let (x, y) = (rng.vector(4), rng.vector(4));
        let (xm, ym) = (s.to_matrix_plus(&x), s.to_matrix_minus(&y));
        let id = Matrix::identity(2);
        let b = s.bergman(&x, &y);
        for l in 0..4 {
            let z = s.to_matrix_plus(&s.basis_vector(l));
            let expect = id.sub(&xm.mul(&ym)).mul(&z).mul(&id.sub(&ym.mul(&xm)));
            assert_eq!(s.to_matrix_plus(&b.column(l)), expect);
        }
    }
}

#[test]
fn generic_norm_examples() {
    let s = space("I:1,1").unwrap();
    assert_eq!(s.generic_norm(&[Q::one()], &[q(1, 2)]), q(1, 2));
    let s = space("I:2,2").unwrap();
    let x = vec![Q::from(5), Q::i(), q(1, 3), Q::from(-2)];
    assert_eq!(s.generic_norm(&x, &[Q::zero(), Q::zero(), Q::zero(), Q::zero()]), Q::one());
}

#[test]
fn closed_forms_agree_with_cached_norm() {
    for spec in classical_catalogue() {
        let s = hermsym_jordan::make_space(&spec).unwrap();
        if let Some(cf) = closed_form_delta(&s) {
            assert_eq!(&cf, s.delta_poly(), "{spec}");
        }
    }
}

#[test]
fn symbolic_root_of_small_determinant() {
    let s = space("I:1,2").unwrap();
    let det = symbolic_det_bergman(&s);
    let root = hermsym_exact::poly_nth_root(&det, 3).unwrap();
    // 1 − x₁y₁ − x₂y₂
    let expect = hermsym_exact::MultiPoly::one()
        - hermsym_exact::MultiPoly::var(0) * hermsym_exact::MultiPoly::var(2)
        - hermsym_exact::MultiPoly::var(1) * hermsym_exact::MultiPoly::var(3);
    assert_eq!(root, expect);
    assert!(hermsym_exact::poly_nth_root(&det, 2).is_err());
}

#[test]
fn norm_certificates() {
    for name in ["I:1,3", "II:3", "III:2", "IV:3", "IV:4", "I:2,3"] {
        let s = space(name).unwrap();
        let cert = certify_delta(&s, 3, 2).unwrap();
        assert_eq!(cert.symbolic, s.dim() <= 3);
    }
}

#[test]
fn quasi_inverse_examples() {
    let s = space("I:1,1").unwrap();
    assert_eq!(s.quasi_inverse(&[Q::from(7)], &[Q::zero()]).unwrap(), vec![Q::from(7)]);
    assert_eq!(s.quasi_inverse(&[Q::one()], &[q(1, 2)]).unwrap(), vec![Q::from(2)]);
    assert_eq!(
        s.quasi_inverse(&[Q::one()], &[Q::one()]),
        Err(JordanError::NotQuasiInvertible { delta: Box::new(Q::zero()) })
    );
}

#[test]
fn conjugation_examples() {
    let s = space("I:1,1").unwrap();
    assert_eq!(s.conjugate(&[Q::i()]), vec![-Q::i()]);
    let s = space("I:2,3").unwrap();
    let mut x = unit_plus(&s, 0, 1);
    let e23 = unit_plus(&s, 1, 2);
    for (a, b) in x.iter_mut().zip(&e23) {
        *a += b * &Q::i();
    }
    let mut expect = Matrix::zeros(3, 2);
    expect[(1, 0)] = Q::one();
    expect[(2, 1)] = -Q::i();
    let xb = s.conjugate(&x);
    assert_eq!(s.to_matrix_minus(&xb), expect);
    assert_eq!(s.conjugate(&xb), x);
}

#[test]
fn dual_basis_and_inner_product() {
    for spec in classical_catalogue() {
        let s = hermsym_jordan::make_space(&spec).unwrap();
        let dual = s.dual_basis();
        for l in 0..s.dim() {
            for (k, d) in dual.iter().enumerate() {
                let expect = if l == k { Q::one() } else { Q::zero() };
                assert_eq!(s.kappa(&s.basis_vector(l), d), expect);
            }
        }
        // Positive definite: every leading principal minor is real and positive.
        let g = s.gram();
        for k in 1..=s.dim() {
            let minor = Matrix::from_fn(k, k, |i, j| g[(i, j)].clone()).det();
            assert!(minor.is_real() && minor.re() > num_rational::BigRational::zero(), "{spec} minor {k}");
        }
    }
}

#[test]
fn killing_form_examples() {
    for spec in classical_catalogue() {
        let s = hermsym_jordan::make_space(&spec).unwrap();
        let z0 = GElement::z0(s.dim());
        assert_eq!(s.killing_form(&z0, &z0).unwrap(), Q::from(2 * s.dim() as i64), "{spec}");
        let v = GElement::plus(s.basis_vector(0));
        assert_eq!(s.killing_form(&v, &v).unwrap(), Q::zero());
    }
    let s = space("I:1,1").unwrap();
    let bad = GElement::levi(Matrix::new(1, 1, vec![Q::one()]));
    assert!(s.killing_form(&bad, &bad).is_ok());
    let s = space("I:2,2").unwrap();
    let mut t = Matrix::zeros(4, 4);
    t[(0, 1)] = Q::one();
    assert_eq!(s.killing_form(&GElement::levi(t.clone()), &GElement::z0(4)), Err(JordanError::NotInL));
    assert_eq!(s.bracket(&GElement::levi(t), &GElement::z0(4)), Err(JordanError::NotInL));
}

#[test]
fn killing_form_matches_adjoint_trace() {
    for name in ["I:1,1", "I:1,2", "I:2,2", "II:4", "III:2", "IV:3", "IV:4"] {
        let s = space(name).unwrap();
        let mut rng = Sampler::new(5);
        for _ in 0..4 {
            let x = s.sample_element(&mut rng);
            let y = s.sample_element(&mut rng);
            assert_eq!(s.killing_form(&x, &y).unwrap(), s.killing_form_bruteforce(&x, &y).unwrap(), "{name}");
        }
    }
}

#[test]
fn bracket_examples() {
    let s = space("I:2,3").unwrap();
    let mut rng = Sampler::new(3);
    let v = rng.vector(6);
    let w = rng.vector(6);
    let z0 = GElement::z0(6);
    assert_eq!(s.bracket(&z0, &GElement::plus(v.clone())).unwrap(), GElement::plus(v.clone()));
    assert_eq!(s.bracket(&z0, &GElement::minus(w.clone())).unwrap(), GElement::minus(w.clone()).scale(&-Q::one()));
    let xy = s.bracket(&GElement::plus(v.clone()), &GElement::minus(w.clone())).unwrap();
    assert_eq!(xy, GElement::levi(s.d_op(&v, &w).neg()));
    let x = s.sample_element(&mut rng);
    assert!(s.bracket(&x, &x).unwrap().is_zero());
}

#[test]
fn cartan_involution_examples() {
    let s = space("III:2").unwrap();
    let v = vec![Q::i(), q(1, 2), Q::complex(1, 1, -2, 3)];
    assert_eq!(s.cartan_involution(&GElement::plus(v.clone())).unwrap(), GElement::minus(s.conjugate(&v)));
    let z0 = GElement::z0(3);
    assert_eq!(s.cartan_involution(&z0).unwrap(), z0.scale(&-Q::one()));
}

#[test]
fn vector_field_examples() {
    let s = space("I:1,1").unwrap();
    let z = vec![Q::from(2)];
    assert_eq!(s.vf_eval(&GElement::z0(1), &z), z);
    assert_eq!(s.vf_eval(&GElement::minus(vec![Q::one()]), &[Q::zero()]), vec![Q::zero()]);
    assert_eq!(s.vf_eval(&GElement::minus(vec![Q::one()]), &z), vec![Q::from(4)]);
    assert_eq!(s.vf_sign(), 1);
}

#[test]
fn triple_product_is_minus_double_bracket() {
    for name in ["I:2,2", "II:4", "III:2", "IV:5"] {
        let s = space(name).unwrap();
        let mut rng = Sampler::new(8);
        let n = s.dim();
        let (x, y, z) = (rng.vector(n), rng.vector(n), rng.vector(n));
        let xy = s.bracket(&GElement::plus(x.clone()), &GElement::minus(y.clone())).unwrap();
        let xyz = s.bracket(&xy, &GElement::plus(z.clone())).unwrap();
        let field = s.vf_eval(&xyz, &rng.vector(n));
        let minus: Vec<Q> = field.into_iter().map(|c| -c).collect();
        assert_eq!(s.d_op(&x, &y).mul_vec(&z), minus, "{name}");
    }
}

#[test]
fn serialization_is_row_major() {
    let s = space("I:2,3").unwrap();
    let x = unit_plus(&s, 1, 2);
    let entries = s.serialize_plus(&x);
    assert_eq!(entries.len(), 6);
    assert_eq!(entries[5], Q::one());
    assert_eq!(s.deserialize_plus(&entries).unwrap(), x);
    let s = space("II:3").unwrap();
    let mut bad = vec![Q::zero(); 9];
    bad[1] = Q::one();
    assert!(s.deserialize_plus(&bad).is_err());
}

const SPACES: &[&str] = &["I:1,2", "I:2,2", "II:4", "III:2", "IV:3", "IV:5"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quasi_inverse_identities(idx in 0..SPACES.len(), seed in any::<u64>()) {
        let s = space(SPACES[idx]).unwrap();
        let mut rng = Sampler::new(seed);
        let (x, y) = s.sample_pair(&mut rng);
        let xy = s.quasi_inverse(&x, &y).unwrap();
        let lhs = s.bergman(&x, &y).mul_vec(&xy);
        let rhs: Vec<Q> = x.iter().zip(s.q_apply(&x, &y)).map(|(a, b)| a - &b).collect();
        prop_assert_eq!(lhs, rhs);
        // x^y = x + Q_x(y^x); with y ↦ −y this is x^{−y} = x − Q_x(y^{−x}).
        let yx = s.quasi_inverse_minus(&y, &x).unwrap();
        let sym: Vec<Q> = x.iter().zip(s.q_apply(&x, &yx)).map(|(a, b)| a + &b).collect();
        prop_assert_eq!(xy, sym);
        let ny: Vec<Q> = y.iter().map(|c| -c.clone()).collect();
        if let (Ok(a), Ok(b)) = (s.quasi_inverse(&x, &ny), s.quasi_inverse_minus(&y, &x.iter().map(|c| -c.clone()).collect::<Vec<_>>())) {
            let sym: Vec<Q> = x.iter().zip(s.q_apply(&x, &b)).map(|(p, q)| p - &q).collect();
            prop_assert_eq!(a, sym);
        }
        prop_assert_eq!(s.bergman(&x, &y).det(), s.generic_norm(&x, &y).pow(s.genus() as u32));
    }

    #[test]
    fn lie_algebra_identities(idx in 0..SPACES.len(), seed in any::<u64>()) {
        let s = space(SPACES[idx]).unwrap();
        let mut rng = Sampler::new(seed);
        let (x, y, z) = (s.sample_element(&mut rng), s.sample_element(&mut rng), s.sample_element(&mut rng));
        let b = |a: &GElement, c: &GElement| s.bracket(a, c).unwrap();
        let jac = b(&b(&x, &y), &z).add(&b(&b(&y, &z), &x)).add(&b(&b(&z, &x), &y));
        prop_assert!(jac.is_zero());
        let k = |a: &GElement, c: &GElement| s.killing_form(a, c).unwrap();
        prop_assert_eq!(k(&b(&x, &y), &z) + k(&y, &b(&x, &z)), Q::zero());
        let th = |a: &GElement| s.cartan_involution(a).unwrap();
        prop_assert_eq!(th(&th(&x)), x.clone());
        prop_assert_eq!(th(&b(&x, &y)), b(&th(&x), &th(&y)));
        let pt = rng.vector(s.dim());
        let field = s.vf_bracket_at(&x, &y, &pt);
        let sign = Q::from(s.vf_sign() as i64);
        let abs: Vec<Q> = s.vf_eval(&b(&x, &y), &pt).into_iter().map(|c| c * &sign).collect();
        prop_assert_eq!(field, abs);
    }
}
