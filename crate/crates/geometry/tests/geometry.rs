use hermsym_exact::{Matrix, Sampler, Q};
use hermsym_geometry::*;
use hermsym_jordan::{space, GElement};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Q {
    Q::ratio(a, b)
}

fn int(k: i64) -> Q {
    Q::from(k)
}

#[test]
fn q_map_on_the_disc() {
    let s = space("I:1,1").unwrap();
    assert_eq!(q_map(&s, &[int(0)]), vec![int(0)]);
    // z̄ / (1 + z z̄)
    assert_eq!(q_map(&s, &[int(1)]), vec![q(1, 2)]);
    assert_eq!(q_map(&s, &[Q::i()]), vec![-Q::i() * q(1, 2)]);
    let z = Q::complex(2, 3, -1, 2);
    let zb = z.conj();
    assert_eq!(q_map(&s, std::slice::from_ref(&z)), vec![&zb / &(int(1) + &z * &zb)]);
}

#[test]
fn potential_values() {
    let s = space("I:1,1").unwrap();
    assert_eq!(kahler_potential(&s, &[int(0)]), PotentialValue { delta_value: int(1), scale: 4 });
    assert_eq!(kahler_potential(&s, &[int(1)]), PotentialValue { delta_value: int(2), scale: 4 });

    let s = space("I:2,2").unwrap();
    let e11 = s.from_matrix_plus(&Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]])).unwrap();
    assert_eq!(kahler_potential(&s, &e11), PotentialValue { delta_value: int(2), scale: 8 });
    for spec in ["I:2,3", "II:4", "III:3", "IV:5"] {
        let s = space(spec).unwrap();
        let v = kahler_potential(&s, &vec![int(0); s.dim()]);
        assert_eq!(v, PotentialValue { delta_value: int(1), scale: 2 * s.genus() as u32 });
    }
}

#[test]
fn metric_examples() {
    let s = space("I:1,1").unwrap();
    // (v|w) = 4 v w̄ and B(1, −1) = 4.
    assert_eq!(metric(&s, &[int(1)], &[int(1)], &[int(1)]), int(1));
    let s = space("III:2").unwrap();
    let mut rng = Sampler::new(3);
    let zero = vec![int(0); s.dim()];
    for _ in 0..10 {
        let (v, w) = (rng.vector(s.dim()), rng.vector(s.dim()));
        assert_eq!(metric(&s, &zero, &v, &w), s.inner(&v, &w));
    }
}

#[test]
fn q_derivative_examples() {
    let s = space("I:1,1").unwrap();
    let d = q_derivatives(&s, &[int(1)], &[int(1)], &[int(1)]).unwrap();
    assert_eq!(d.holomorphic, vec![q(-1, 4)]);
    assert_eq!(d.antiholomorphic, vec![q(1, 4)]);
    let s = space("II:4").unwrap();
    let mut rng = Sampler::new(5);
    let zero = vec![int(0); s.dim()];
    let (v, w) = (rng.vector(s.dim()), rng.vector(s.dim()));
    let d = q_derivatives(&s, &zero, &v, &w).unwrap();
    assert_eq!(d.holomorphic, zero);
    assert_eq!(d.antiholomorphic, w);
}

#[test]
fn omega_examples() {
    let s = space("I:1,1").unwrap();
    assert_eq!(omega_local(&s, &GElement::plus(vec![int(1)]), &[int(1)]).unwrap(), int(-2));
    assert_eq!(omega_local(&s, &GElement::plus(vec![int(1)]), &[int(0)]).unwrap(), int(0));
    for spec in ["I:1,1", "I:2,3", "IV:4"] {
        let s = space(spec).unwrap();
        let n = s.dim();
        assert_eq!(omega_local(&s, &GElement::z0(n), &vec![int(0); n]).unwrap(), int(2 * n as i64));
        assert_eq!(adjoint_shift(&s, &vec![int(0); n]), GElement::z0(n));
    }
    let shift = adjoint_shift(&s, &[int(1)]);
    assert_eq!(shift, GElement { v: vec![q(-1, 2)], t: Matrix::from_rows(vec![vec![int(2)]]), w: vec![q(1, 2)] });
}

#[test]
fn printed_trace_integrand_has_the_wrong_sign() {
    // With −D_{v,z̄} in place of +D_{v,z̄} the trace identity fails on the disc.
    let s = space("I:1,1").unwrap();
    let (z, v) = ([int(1)], [int(1)]);
    let zb = s.conjugate(&z);
    let wrong = s.d_op(&v, &zb).neg().add(&s.q2_op(&v, &z).mul(&s.q_op_minus(&zb)));
    let lhs = bergman_diagonal(&s, &z).inverse().unwrap().mul(&wrong).trace();
    let (good, rhs) = log_det_trace(&s, &z, &v);
    assert_eq!(good, rhs);
    assert_ne!(lhs, rhs);
}

#[test]
fn suite_passes_across_the_catalogue() {
    for spec in hermsym_jordan::classical_catalogue() {
        let s = hermsym_jordan::make_space(&spec).unwrap();
        for p in hermsym_geometry::checks::properties() {
            let mut rng = Sampler::derived(11, p.name);
            for _ in 0..3 {
                if let Err(e) = (p.check)(&s, &mut rng) {
                    panic!("{spec}: {}: {e}", p.name);
                }
            }
        }
    }
}

const SPACES: [&str; 5] = ["I:1,2", "I:2,2", "II:4", "III:2", "IV:5"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn metric_is_positive_and_matches_the_hessian(idx in 0usize..SPACES.len(), seed in any::<u64>()) {
        let s = space(SPACES[idx]).unwrap();
        let mut rng = Sampler::new(seed);
        let z = rng.vector(s.dim());
        let h = metric_matrix(&s, &z);
        prop_assert!(h == h.adjoint());
        prop_assert!(hermsym_jordan::checks::leading_minors_positive(&h));
        let (v, w) = (rng.vector(s.dim()), rng.vector(s.dim()));
        prop_assert_eq!(potential_hessian(&s, &z, &v, &w), metric(&s, &z, &v, &w));
    }

    #[test]
    fn potential_value_is_positive(idx in 0usize..SPACES.len(), seed in any::<u64>()) {
        let s = space(SPACES[idx]).unwrap();
        let z = Sampler::new(seed).vector(s.dim());
        prop_assert!(kahler_potential(&s, &z).delta_value.is_positive_real());
    }
}
