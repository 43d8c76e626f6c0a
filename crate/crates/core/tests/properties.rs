use proptest::prelude::*;

use trilie::algebra::{build_l, build_l_full_rank, build_t, coadjoint_fields, structure_matrix, CharMatrixSpec, LieAlgebra};
use trilie::catalog::{w_matrix, z_matrix};
use trilie::sampling::{self, Point};
use trilie::symbolic::rational::{q, q_frac};
use trilie::symbolic::{InvariantExpr, Monomial, PolyMatrix, Polynomial, RationalFn, Universe, VarId, VectorField, Q};

fn vars() -> Vec<VarId> {
    Universe::new(4, 2).vars().collect()
}

fn poly() -> impl Strategy<Value = Polynomial> {
    let n = vars().len();
    prop::collection::vec((-9i64..=9, prop::collection::vec((0..n, 1u32..=2), 0..3)), 0..5).prop_map(move |terms| {
        let vs = vars();
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(c, powers)| (Monomial::from_powers(powers.into_iter().map(|(i, e)| (vs[i], e)).collect()), q(c))),
        )
    })
}

fn field() -> impl Strategy<Value = VectorField> {
    let n = vars().len();
    prop::collection::vec((0..n, poly()), 1..4).prop_map(|parts| {
        let vs = vars();
        let mut v = VectorField::zero();
        for (i, p) in parts {
            v.add_component(vs[i], p);
        }
        v
    })
}

fn nonzero_q() -> impl Strategy<Value = Q> {
    (1i64..=12, 1i64..=12, any::<bool>()).prop_map(|(p, d, neg)| q_frac(if neg { -p } else { p }, d))
}

fn algebra() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![
        (2usize..=6).prop_map(|m| build_t(m).unwrap()),
        (3usize..=5).prop_map(|m| build_l_full_rank(m).unwrap()),
        (nonzero_q(), nonzero_q(), nonzero_q())
            .prop_map(|(a, b, c)| build_l(&CharMatrixSpec::diagonal(4, vec![vec![a, b, c]])).unwrap()),
        nonzero_q().prop_map(|s| {
            let spec = CharMatrixSpec::diagonal(4, vec![vec![q(1), q(0), q(-1)], vec![q(0), q(1), q(-1)]]).with_sigma(1, 2, s);
            build_l(&spec).unwrap()
        }),
    ]
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivation_product_rule(a in poly(), b in poly(), v in field()) {
        let lhs = v.apply_poly(&(&a * &b));
        let rhs = &(&v.apply_poly(&a) * &b) + &(&a * &v.apply_poly(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_rule(a in poly(), b in poly(), v in field()) {
        prop_assume!(!b.is_zero() && !b.is_constant());
        let r = RationalFn::new(a.clone(), &b);
        let expected = RationalFn::new(&(&v.apply_poly(&a) * &b) - &(&a * &v.apply_poly(&b)), &(&b * &b));
        prop_assert!(r.derive(&v).sub(&expected).is_zero());
    }

    #[test]
    fn polynomial_text_round_trip(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Polynomial>().unwrap(), a);
    }

    #[test]
    fn expression_text_round_trip(a in poly(), b in poly(), c in nonzero_q()) {
        prop_assume!(!b.is_zero() && !b.is_constant());
        let e = InvariantExpr::from(RationalFn::new(a, &b)).add(&InvariantExpr::ln(b.clone()).scale(&c));
        let back: InvariantExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(back.normalized(), e.normalized());
    }

    #[test]
    fn determinant_expansions_agree(size in 1usize..=4, entries in prop::collection::vec(poly(), 16)) {
        let m = PolyMatrix::from_fn(size, size, |i, j| entries[i * 4 + j].clone());
        prop_assert_eq!(m.det_cofactor(), m.det_bareiss());
    }

    #[test]
    fn coadjoint_fields_respect_brackets(alg in algebra(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let fields = coadjoint_fields(&alg);
        let (i, j) = (i.index(alg.dim()), j.index(alg.dim()));
        let mut rhs = VectorField::zero();
        for (k, c) in alg.bracket(i, j) {
            rhs = rhs.add(&fields[k].scale(&c));
        }
        prop_assert_eq!(fields[i].commutator(&fields[j]), rhs);
    }

    #[test]
    fn jacobi_identity(alg in algebra(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let d = alg.dim();
        prop_assert!(alg.jacobiator(i.index(d), j.index(d), k.index(d)).is_empty());
    }

    #[test]
    fn structure_matrix_antisymmetric_even_rank(alg in algebra(), seed in any::<u64>()) {
        let s = structure_matrix(&alg);
        prop_assert!(s.is_antisymmetric());
        let point = Point::random(&alg.universe(), &mut sampling::rng(seed));
        prop_assert_eq!(s.eval(&point.as_fn()).unwrap().rank() % 2, 0);
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn corner_matrices_are_square_minors(m in 4usize..=9, mu in 1usize..=4) {
        prop_assume!(mu <= m / 2);
        let z = z_matrix(m, mu).unwrap();
        prop_assert_eq!((z.rows(), z.cols()), (mu, mu));
        if mu <= (m - 1) / 2 {
            let w = w_matrix(m, mu, 1).unwrap();
            prop_assert_eq!((w.rows(), w.cols()), (mu + 1, mu + 1));
            prop_assert!(w.get(mu, 0).is_zero());
        }
    }
}
