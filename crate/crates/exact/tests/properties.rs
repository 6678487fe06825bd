use hermsym_exact::{jet_eval, poly_nth_root, Expr, Field, Jet, Matrix, Monomial, MultiPoly, Ring, Series, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=3, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| Q::complex(a, b, c, d))
}

fn square_matrix() -> impl Strategy<Value = Matrix<Q>> {
    (1usize..=5).prop_flat_map(|n| proptest::collection::vec(small_q(), n * n).prop_map(move |d| Matrix::new(n, n, d)))
}

/// Polynomial with constant term one, degree at most 3, at most 4 variables.
fn unit_poly() -> impl Strategy<Value = MultiPoly<Q>> {
    let term = (proptest::collection::vec(0u16..=3, 4), small_q());
    proptest::collection::vec(term, 0..6).prop_map(|terms| {
        let mut p = MultiPoly::one();
        for (e, c) in terms {
            let m = Monomial::new(e);
            if (1..=3).contains(&m.degree()) {
                p.add_term(m, c);
            }
        }
        p
    })
}

fn poly_in(nvars: usize) -> impl Strategy<Value = MultiPoly<Q>> {
    let term = (proptest::collection::vec(0u16..=2, nvars), small_q());
    proptest::collection::vec(term, 0..6)
        .prop_map(|terms| MultiPoly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::new(e), c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverse_is_exact(m in square_matrix()) {
        prop_assume!(!m.det().is_zero());
        let inv = m.inverse().unwrap();
        prop_assert!(m.mul(&inv).is_identity());
        prop_assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn determinant_algorithms_agree(m in square_matrix()) {
        prop_assert_eq!(m.det(), m.det_berkowitz());
    }

    #[test]
    fn solve_satisfies_system(m in square_matrix(), seed in small_q()) {
        prop_assume!(!m.det().is_zero());
        let b: Vec<Q> = (0..m.rows()).map(|i| &seed * &Q::from(i as i64 + 1)).collect();
        let x = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn scalar_string_roundtrip(a in small_q(), b in small_q()) {
        let z = &a * &b;
        prop_assert_eq!(z.to_string().parse::<Q>().unwrap(), z.clone());
        prop_assert_eq!(z.conj().conj(), z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn nth_root_recovers_base(r in unit_poly(), p in 1u32..=3) {
        prop_assert_eq!(poly_nth_root(&r.pow(p), p).unwrap(), r);
    }

    #[test]
    fn jets_agree_with_symbolic_derivative(p in poly_in(3), pt in proptest::collection::vec(small_q(), 3), dir in proptest::collection::vec(small_q(), 3)) {
        let e = Expr::poly(p.clone());
        let j = jet_eval(&e, &pt, &dir).unwrap();
        prop_assert_eq!(&j.v, &p.eval(&pt));
        prop_assert_eq!(&j.d, &p.directional(&dir).eval(&pt));
        let dir_e: Vec<Expr> = dir.iter().cloned().map(Expr::constant).collect();
        prop_assert_eq!(e.directional(&dir_e).eval(&pt).unwrap(), j.d);
    }

    #[test]
    fn series_agrees_with_taylor_coefficients(p in poly_in(2), a in small_q(), b in small_q()) {
        // p(a + t0, b + t1) expanded to order 3 reproduces the low partials.
        let vars = [Series::variable(0, a.clone(), 3), Series::variable(1, b.clone(), 3)];
        let s = p.eval(&vars);
        let pt = [a, b];
        prop_assert_eq!(s.constant_term(), p.eval(&pt));
        prop_assert_eq!(s.coefficient(&[1, 0]), p.partial(0).eval(&pt));
        prop_assert_eq!(s.coefficient(&[1, 1]), p.partial(0).partial(1).eval(&pt));
    }
}

#[test]
fn jet_division_matches_quotient_rule() {
    let x = Jet::new(Q::from(2), Q::one());
    let y = Jet::constant(Q::from(3));
    let q = x.mul_ref(&(y + x.clone()).inv().unwrap());
    // d/dx x/(3+x) = 3/(3+x)² = 3/25.
    assert_eq!(q.d, Q::ratio(3, 25));
}

#[test]
fn series_inverse_times_series_is_one() {
    let t = Series::variable(0, Q::zero(), 6);
    let u = Series::variable(1, Q::zero(), 6);
    let a = Series::from(Q::from(2)) + t.clone() * u.clone() - t.scale(&Q::i());
    let inv = a.inv().unwrap();
    assert_eq!(a.mul_ref(&inv), Series::one().truncate(6));
}

#[test]
fn gaussian_rationals_serialize_as_strings() {
    let z = Q::complex(3, 2, -1, 4);
    let s = serde_json::to_string(&z).unwrap();
    assert_eq!(s, "\"3/2-1/4i\"");
    assert_eq!(serde_json::from_str::<Q>(&s).unwrap(), z);
    assert_eq!(serde_json::to_string(&Monomial::new(vec![1, 0, 2])).unwrap(), "[1,0,2]");
}
