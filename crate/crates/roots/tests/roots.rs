use hermsym_exact::{Monomial, MultiPoly, Q};
use hermsym_jordan::{classical_catalogue, make_space, space, SpaceSpec};
use hermsym_roots::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rs(s: &str) -> RootSystemData {
    build_root_system(&s.parse::<SpaceSpec>().unwrap()).unwrap()
}

fn e(n: usize, terms: &[(usize, i64)]) -> Weight {
    let mut v = vec![0; n];
    for &(i, c) in terms {
        v[i - 1] += c;
    }
    v
}

fn low_rank() -> Vec<SpaceSpec> {
    classical_catalogue().into_iter().filter(|s| s.invariants().rank <= 3).collect()
}

#[test]
fn root_counts() {
    // |Φ| for A_n, B_n, C_n, D_n, E6, E7.
    let cases = [
        ("I:2,3", "A4", 20),
        ("I:1,1", "A1", 2),
        ("II:5", "D5", 40),
        ("III:3", "C3", 18),
        ("IV:5", "B3", 18),
        ("IV:6", "D4", 24),
        ("V", "E6", 72),
        ("VI", "E7", 126),
    ];
    for (s, ty, count) in cases {
        let r = rs(s);
        assert_eq!(r.cartan_type(), ty, "{s}");
        assert_eq!(r.roots().len(), count, "{s}");
    }
}

#[test]
fn table_dimensions_and_ranks() {
    let mut all: Vec<(String, usize, usize)> =
        classical_catalogue().iter().map(|s| (s.to_string(), s.invariants().dim, s.invariants().rank)).collect();
    all.push(("V".into(), 16, 2));
    all.push(("VI".into(), 27, 3));
    for (s, n, r) in all {
        let sys = rs(&s);
        assert_eq!((sys.nc_positive().len(), sys.gammas().len()), (n, r), "{s}");
        assert!(sys.pairwise_strongly_orthogonal(sys.gammas()), "{s}");
    }
    assert_eq!(rs("I:2,3").nc_positive().len(), 6);
    assert_eq!(rs("IV:5").nc_positive().len(), 5);
}

#[test]
fn type_a_matches_explicit_roots() {
    // Φ(n⁺) = {eᵢ − eⱼ : i ≤ r < j} and γᵢ = eᵢ − e_{n+1−i}.
    for (r, s) in [(1, 1), (1, 4), (2, 2), (2, 3), (3, 3)] {
        let n = r + s;
        let sys = rs(&format!("I:{r},{s}"));
        let mut expected: Vec<Weight> =
            (1..=r).flat_map(|i| (r + 1..=n).map(move |j| e(n, &[(i, 1), (j, -1)]))).collect();
        let mut got = sys.nc_positive().to_vec();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        let gammas: Vec<Weight> = (1..=r).map(|i| e(n, &[(i, 1), (n + 1 - i, -1)])).collect();
        assert_eq!(sys.gammas(), gammas.as_slice());
    }
}

#[test]
fn strongly_orthogonal_examples() {
    assert_eq!(strongly_orthogonal(&rs("I:2,2")), vec![e(4, &[(1, 1), (4, -1)]), e(4, &[(2, 1), (3, -1)])]);
    assert_eq!(strongly_orthogonal(&rs("III:2")), vec![e(2, &[(1, 2)]), e(2, &[(2, 2)])]);
    assert_eq!(strongly_orthogonal(&rs("VI")).len(), 3);
}

#[test]
fn marked_coefficient_is_at_most_one() {
    for s in ["I:2,3", "II:5", "III:3", "IV:5", "IV:6", "V", "VI"] {
        let sys = rs(s);
        for b in sys.roots() {
            assert!(sys.root_coords(b).unwrap()[0].abs() <= 1, "{s}");
        }
    }
}

#[test]
fn hks_examples() {
    let sys = rs("I:2,2");
    assert_eq!(hks_weights(&sys, 0), vec![(vec![0, 0], vec![0; 4])]);
    let sigs: Vec<Signature> = hks_weights(&sys, 2).into_iter().map(|(m, _)| m).collect();
    assert_eq!(sigs, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0]]);
    assert_eq!(gamma_m(&sys, &[1, 1]), vec![1, 1, -1, -1]);
}

#[test]
fn lambda_m_examples() {
    let sys = rs("I:2,2");
    assert_eq!(lambda_m_set(&sys, &[0, 0]).unwrap(), vec![vec![1, 0, 0, -1]]);
    let mut got = lambda_m_set(&sys, &[1, 0]).unwrap();
    let mut expected = vec![vec![2, 0, 0, -2], vec![2, 0, -1, -1], vec![1, 1, -1, -1], vec![1, 1, 0, -2]];
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    assert!(matches!(lambda_m_set(&sys, &[0, 1]), Err(RootError::InvalidSignature(_))));
    assert!(matches!(lambda_m_set(&sys, &[1]), Err(RootError::InvalidSignature(_))));
}

#[test]
fn successor_rule() {
    for spec in low_rank() {
        let sys = build_root_system(&spec).unwrap();
        for m in signatures(sys.rank(), 3) {
            assert!(successor_rule_holds(&sys, &m).unwrap(), "{spec} {m:?}");
        }
    }
}

#[test]
fn chain_multiplicity_examples() {
    let sys = rs("I:2,2");
    assert_eq!(chain_multiplicity(&sys, &[0, 0], &sys.gammas()[0]).unwrap(), 1);
    assert_eq!(chain_multiplicity(&sys, &[0, 0], &[1, 0, -1, 0]).unwrap(), 0);
    assert!(matches!(chain_multiplicity(&sys, &[0, 0], &[1, -1, 0, 0]), Err(RootError::NotNoncompact(_))));
    for s in ["I:1,3", "II:5", "III:2", "IV:7"] {
        let sys = rs(s);
        let m = vec![0; sys.rank()];
        assert_eq!(chain_multiplicity(&sys, &m, &sys.gammas()[0]).unwrap(), 1, "{s}");
    }
}

#[test]
fn chain_multiplicity_agrees_with_lambda_m() {
    for spec in low_rank() {
        let sys = build_root_system(&spec).unwrap();
        for m in signatures(sys.rank(), 3) {
            let set = lambda_m_set(&sys, &m).unwrap();
            let g = gamma_m(&sys, &m);
            for beta in sys.nc_positive() {
                let lambda: Weight = g.iter().zip(beta).map(|(a, b)| a + b).collect();
                let k = chain_multiplicity(&sys, &m, beta).unwrap();
                assert_eq!(k == 1, set.contains(&lambda), "{spec} m={m:?} β={beta:?}");
            }
        }
    }
}

#[test]
fn simply_laced_needs_no_chain_condition() {
    let mut specs = low_rank();
    specs.push("V".parse().unwrap());
    specs.push("VI".parse().unwrap());
    for spec in specs {
        let sys = build_root_system(&spec).unwrap();
        if !sys.is_simply_laced() {
            continue;
        }
        for m in signatures(sys.rank(), 3) {
            assert_eq!(lambda_m_entries(&sys, &m, true).unwrap(), lambda_m_entries(&sys, &m, false).unwrap(), "{spec}");
        }
    }
    assert!(rs("I:2,3").is_simply_laced() && rs("IV:6").is_simply_laced() && rs("VI").is_simply_laced());
    assert!(!rs("III:2").is_simply_laced() && !rs("IV:5").is_simply_laced());
}

#[test]
fn chain_condition_matters_for_type_c() {
    let sys = rs("III:2");
    let differs = signatures(2, 3)
        .iter()
        .any(|m| lambda_m_entries(&sys, m, true).unwrap() != lambda_m_entries(&sys, m, false).unwrap());
    assert!(differs);
}

#[test]
fn tangent_multiplicity_examples() {
    for s in ["I:2,2", "I:2,3", "II:4", "III:2", "IV:5"] {
        let sys = rs(s);
        let t = tangent_spectrum(&sys, 4);
        let mult = |m: &[u32]| t.get(&gamma_m(&sys, m)).unwrap().multiplicity;
        assert_eq!(mult(&[2, 1]), 2, "{s}");
        assert_eq!(mult(&[1, 1]), 1, "{s}");
        assert_eq!(mult(&[1, 0]), 1, "{s}");
        assert_eq!(t.get(&gamma_m(&sys, &[2, 1])).unwrap().signature, Some(vec![2, 1]));
    }
}

#[test]
fn descent_formula_matches_raw_counts() {
    for spec in low_rank() {
        let sys = build_root_system(&spec).unwrap();
        let a = tangent_spectrum(&sys, 4);
        let b = coincidence_oracle(&sys, 4);
        assert!(a.settled().count() > 0, "{spec}");
        assert_eq!(table_mismatches(&a, &b), Vec::<String>::new(), "{spec}");
        for entry in a.entries.iter().chain(&b.entries) {
            assert!(entry.multiplicity >= 1 && entry.multiplicity as usize <= spec.invariants().dim);
            assert!(sys.is_dominant_integral(&entry.lambda), "{spec} {:?}", entry.lambda);
            assert!(!entry.provisional, "{spec}: provisional entry {:?}", entry.lambda);
        }
    }
}

#[test]
fn rank_one_is_multiplicity_free() {
    for s in ["I:1,1", "I:1,3", "I:1,5"] {
        let sys = rs(s);
        assert!(coincidence_oracle(&sys, 4).entries.iter().all(|e| e.multiplicity == 1), "{s}");
    }
}

#[test]
fn line_bundles() {
    let sys = rs("I:2,2");
    let scalar = line_bundle_spectrum(&sys, &[0; 4], 2).unwrap();
    let hks: Vec<Weight> = hks_weights(&sys, 2).into_iter().map(|(_, g)| g).collect();
    assert_eq!(scalar.entries.iter().map(|e| e.lambda.clone()).collect::<Vec<_>>(), hks);
    assert_eq!(scalar.bundle, "scalar");
    let nu = vec![1, 1, 0, 0];
    let line = line_bundle_spectrum(&sys, &nu, 3).unwrap();
    assert_eq!(line.entries.len(), signatures(2, 3).len());
    assert!(line.entries.iter().all(|e| e.multiplicity == 1 && sys.is_dominant_integral(&e.lambda)));
    assert!(matches!(line_bundle_spectrum(&sys, &[1], 2), Err(RootError::InvalidWeight(_))));
    assert!(matches!(line_bundle_spectrum(&sys, &[1, 0, 0, 0], 2), Err(RootError::InvalidWeight(_))));
}

#[test]
fn weight_table_json_shape() {
    let t = tangent_spectrum(&rs("I:1,1"), 1);
    let v: serde_json::Value = serde_json::to_value(&t).unwrap();
    assert_eq!(v["space"], "I:1,1");
    assert_eq!(v["bundle"], "tangent");
    assert_eq!(v["max_total"], 1);
    let first = &v["entries"][0];
    assert_eq!(first["lambda"], serde_json::json!([1, -1]));
    assert_eq!(first["signature"], serde_json::json!([1]));
    assert_eq!(first["multiplicity"], 1);
    assert_eq!(first["provisional"], false);
    let back: WeightTable = serde_json::from_value(v).unwrap();
    assert_eq!(back, t);
}

#[test]
fn hwv_examples() {
    let s = space("I:1,1").unwrap();
    assert_eq!(hwv_polynomial(&s, &[0]).unwrap(), MultiPoly::one());
    // Δ(1, 1 − w) = 1 − (1 − w).
    assert_eq!(hwv_polynomial(&s, &[1]).unwrap(), MultiPoly::var(0));
    let s = space("I:2,2").unwrap();
    let p = hwv_polynomial(&s, &[1, 1]).unwrap();
    assert_eq!(p.degree(), Some(2));
    assert!(p.terms().all(|(m, _)| m.degree() == 2));
    let p = hwv_polynomial(&s, &[2, 1]).unwrap();
    assert_eq!(p.degree(), Some(3));
    assert!(matches!(hwv_polynomial(&s, &[1, 2]), Err(RootError::InvalidSignature(_))));
    // The exceptional spaces have no matrix model to build a polynomial on.
    assert!(space("V").is_err());
}

#[test]
fn i22_determinant_type_minor() {
    // With w = [[w0, w1], [w2, w3]] the top minor is a 2×2 determinant in w
    // read through the anti-diagonal frame, up to sign.
    let s = space("I:2,2").unwrap();
    let p = hwv_polynomial(&s, &[1, 1]).unwrap();
    assert_eq!(p.num_terms(), 2);
    let c = |exps: Vec<u16>| p.coefficient(&Monomial::new(exps));
    assert_eq!(c(vec![1, 0, 0, 1]), -c(vec![0, 1, 1, 0]));
    assert!(c(vec![1, 0, 0, 1]) != Q::from(0));
}

#[test]
fn torus_weight_examples() {
    let s = space("I:2,2").unwrap();
    assert_eq!(torus_weight_check(&s, &[0, 0]).unwrap(), vec![0, 0]);
    assert_eq!(torus_weight_check(&s, &[1, 0]).unwrap(), vec![2, 0]);
    assert_eq!(torus_weight_check(&s, &[2, 1]).unwrap(), vec![4, 2]);
}

#[test]
fn non_eigenvector_is_reported() {
    let s = space("I:2,2").unwrap();
    let t = s.d_op(&s.frame()[0], &s.conjugate(&s.frame()[0]));
    let p = MultiPoly::var(0) + MultiPoly::var(1) * MultiPoly::var(2);
    let tp = torus_action(&s, &t, &p);
    assert!(tp != p.scale(&Q::from(0)) && tp != p.scale(&Q::from(2)));
}

#[test]
fn highest_weight_bridge_across_the_catalogue() {
    for spec in low_rank() {
        let s = make_space(&spec).unwrap();
        sl2_relations(&s).unwrap();
        for m in signatures(s.rank(), 3) {
            let eig = torus_weight_check(&s, &m).unwrap();
            assert_eq!(eig, m.iter().map(|&k| 2 * k as i64).collect::<Vec<_>>(), "{spec} {m:?}");
            if s.family() == hermsym_jordan::Family::I {
                assert!(raising_annihilates(&s, &m).unwrap(), "{spec} {m:?}");
            }
        }
    }
}

#[test]
fn raising_operators_single_out_the_top_minor() {
    // Among the coordinate functions on n⁻ exactly one is killed by every
    // raising operator, and it is proportional to Δ₁.
    let s = space("I:2,2").unwrap();
    let ops = raising_operators(&s).unwrap();
    assert_eq!(ops.len(), 2);
    let killed: Vec<usize> =
        (0..s.dim()).filter(|&k| ops.iter().all(|t| torus_action(&s, t, &MultiPoly::var(k)).is_zero())).collect();
    assert_eq!(killed.len(), 1);
    let p = hwv_polynomial(&s, &[1, 0]).unwrap();
    assert_eq!(p.num_terms(), 1);
    assert_eq!(p.degree(), Some(1));
    assert!(!p.coefficient(&Monomial::var(killed[0])).is_zero());
    assert!(matches!(raising_operators(&space("II:4").unwrap()), Err(RootError::UnsupportedSpace(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn signatures_are_sorted_partitions(r in 1usize..4, total in 0u32..6) {
        let sigs = signatures(r, total);
        for w in sigs.windows(2) {
            let (a, b): (u32, u32) = (w[0].iter().sum(), w[1].iter().sum());
            prop_assert!(a < b || (a == b && w[0] < w[1]));
        }
        for m in &sigs {
            prop_assert!(m.len() == r && m.windows(2).all(|p| p[0] >= p[1]) && m.iter().sum::<u32>() <= total);
        }
    }

    #[test]
    fn gamma_m_round_trips(idx in 0usize..5, a in 0u32..4, b in 0u32..4) {
        let sys = rs(["I:2,2", "I:2,3", "II:4", "III:2", "IV:5"][idx]);
        let m = vec![a.max(b), a.min(b)];
        let g = gamma_m(&sys, &m);
        prop_assert_eq!(as_gamma_m(&sys, &g), Some(m.clone()));
        prop_assert!(sys.is_dominant_integral(&g));
        prop_assert_eq!(descents(&m), (m[0] > m[1]) as u32 + (m[1] > 0) as u32);
    }
}
