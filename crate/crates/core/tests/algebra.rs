use trilie::algebra::*;
use trilie::error::AlgebraError;
use trilie::symbolic::rational::q;
use trilie::symbolic::{Polynomial, Q, VarId, VectorField};

fn n(i: usize, k: usize) -> Polynomial {
    Polynomial::var(VarId::n(i, k))
}

fn qs(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| q(*x)).collect()
}

fn idx(alg: &LieAlgebra, v: VarId) -> usize {
    alg.universe().index(v).unwrap()
}

#[test]
fn heisenberg_and_small_cases() {
    let t3 = build_t(3).unwrap();
    assert_eq!(t3.dim(), 3);
    let brackets: Vec<_> = t3.structure().collect();
    assert_eq!(brackets.len(), 1);
    let ((i, j), terms) = brackets[0];
    assert_eq!((t3.label(i), t3.label(j)), ("N_1_2".to_string(), "N_2_3".to_string()));
    assert_eq!(terms, &[(idx(&t3, VarId::n(1, 3)), q(1))]);

    let t4 = build_t(4).unwrap();
    assert_eq!(t4.dim(), 6);
    let b = t4.bracket(idx(&t4, VarId::n(1, 2)), idx(&t4, VarId::n(2, 4)));
    assert_eq!(b.into_iter().collect::<Vec<_>>(), vec![(idx(&t4, VarId::n(1, 4)), q(1))]);
    assert!(t4.bracket(idx(&t4, VarId::n(1, 2)), idx(&t4, VarId::n(1, 3))).is_empty());

    let t2 = build_t(2).unwrap();
    assert_eq!(t2.dim(), 1);
    assert_eq!(t2.structure().count(), 0);
    assert_eq!(build_t(1), Err(AlgebraError::InvalidSize(1)));
}

#[test]
fn build_extensions() {
    let l41 = build_l(&CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1])])).unwrap();
    assert_eq!(l41.dim(), 7);
    let diag: Vec<Q> = (0..6).map(|i| l41.spec().unwrap().matrix(1)[i][i].clone()).collect();
    assert_eq!(diag, qs(&[1, 0, -1, 1, -1, 0]));

    let l43 = build_l_full_rank(4).unwrap();
    assert_eq!((l43.f(), l43.dim()), (3, 9));
    let spec = l43.spec().unwrap();
    assert_eq!(spec.diag_entry(2, 1, 3), q(1));
    assert_eq!(spec.diag_entry(2, 1, 4), q(1));
    assert_eq!(spec.diag_entry(2, 1, 2), q(0));
    assert!(spec.sigma.iter().flatten().all(|s| *s == q(0)));

    let l32 = build_l_full_rank(3).unwrap();
    let s = l32.spec().unwrap();
    let d = |a: usize| (0..3).map(|i| s.matrix(a)[i][i].clone()).collect::<Vec<_>>();
    assert_eq!(d(1), qs(&[1, 0, 1]));
    assert_eq!(d(2), qs(&[0, 1, 1]));
    assert_eq!(build_l_full_rank(2), Err(AlgebraError::InvalidSize(2)));

    let bad = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, 0]), qs(&[0, 1, 0])]).with_sigma(1, 2, q(1));
    assert!(matches!(build_l(&bad), Err(AlgebraError::CanonicalFormViolation { .. })));

    let with_sigma = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1]), qs(&[0, 1, -1])]).with_sigma(1, 2, q(3));
    let alg = build_l(&with_sigma).unwrap();
    let b = alg.bracket(idx(&alg, VarId::x(2)), idx(&alg, VarId::x(1)));
    assert_eq!(b.into_iter().collect::<Vec<_>>(), vec![(idx(&alg, VarId::n(1, 4)), q(-3))]);
}

#[test]
fn off_diagonal_extension_brackets() {
    // a12 = a24
    let spec = CharMatrixSpec::diagonal(4, vec![qs(&[3, 1, 2])])
        .with_off_diagonal(1, VarId::n(1, 2), VarId::n(2, 4), q(5));
    let alg = build_l(&spec).unwrap();
    let b: Vec<_> = alg.bracket(idx(&alg, VarId::x(1)), idx(&alg, VarId::n(1, 2))).into_iter().collect();
    assert_eq!(b, vec![(idx(&alg, VarId::n(1, 2)), q(3)), (idx(&alg, VarId::n(2, 4)), q(5))]);
}

#[test]
fn coadjoint_field_examples() {
    let t4 = build_t(4).unwrap();
    let fields = coadjoint_fields(&t4);
    assert!(fields[idx(&t4, VarId::n(1, 4))].is_zero());
    let expected = VectorField::from_components([(VarId::n(2, 3), n(1, 3)), (VarId::n(2, 4), n(1, 4))]);
    assert_eq!(fields[idx(&t4, VarId::n(1, 2))], expected);

    let l41 = build_l(&CharMatrixSpec::diagonal(4, vec![qs(&[2, 3, 5])])).unwrap();
    let fields = coadjoint_fields(&l41);
    let expected = VectorField::from_components([(VarId::x(1), n(1, 4).scale(&q(-10)))]);
    assert_eq!(fields[idx(&l41, VarId::n(1, 4))], expected);
    for m in 2..=9 {
        let t = build_t(m).unwrap();
        assert!(coadjoint_fields(&t)[idx(&t, VarId::n(1, m))].is_zero());
    }
}

fn check_closed_forms(alg: &LieAlgebra) {
    assert_eq!(coadjoint_fields(alg), closed_form_fields(alg), "closed forms differ for {}", alg.name());
}

#[test]
fn closed_forms_match_structure_constants() {
    for m in 2..=9 {
        check_closed_forms(&build_t(m).unwrap());
    }
    for m in 3..=9 {
        check_closed_forms(&build_l_full_rank(m).unwrap());
    }
    // a12 = a24 and a23 = a14
    let spec = CharMatrixSpec::diagonal(4, vec![qs(&[1, 2, -1])])
        .with_off_diagonal(1, VarId::n(1, 2), VarId::n(2, 4), q(1))
        .with_off_diagonal(1, VarId::n(2, 3), VarId::n(1, 4), q(2));
    check_closed_forms(&build_l(&spec).unwrap());
    // a34 = a15 and a45 = a14
    let spec = CharMatrixSpec::diagonal(5, vec![qs(&[1, 2, -6, -3])])
        .with_off_diagonal(1, VarId::n(3, 4), VarId::n(1, 5), q(7))
        .with_off_diagonal(1, VarId::n(4, 5), VarId::n(1, 4), q(-1));
    check_closed_forms(&build_l(&spec).unwrap());
    let sigma = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1]), qs(&[0, 1, -1])]).with_sigma(1, 2, q(2));
    check_closed_forms(&build_l(&sigma).unwrap());
}

#[test]
fn fields_represent_the_algebra() {
    let algs = vec![
        build_t(5).unwrap(),
        build_l_full_rank(4).unwrap(),
        build_l(&CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1]), qs(&[0, 1, -1])]).with_sigma(1, 2, q(2))).unwrap(),
    ];
    for alg in algs {
        let fields = coadjoint_fields(&alg);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let mut rhs = VectorField::zero();
                for (k, c) in alg.bracket(i, j) {
                    rhs = rhs.add(&fields[k].scale(&c));
                }
                assert_eq!(fields[i].commutator(&fields[j]), rhs, "{} ({i}, {j})", alg.name());
            }
        }
    }
}

#[test]
fn structure_matrices() {
    let s = structure_matrix(&build_t(2).unwrap());
    assert_eq!((s.rows(), s.cols()), (1, 1));
    assert!(s.get(0, 0).is_zero());
    let s = structure_matrix(&build_t(3).unwrap());
    assert_eq!(s.get(0, 1), &n(1, 3));
    assert_eq!(s.get(1, 0), &-n(1, 3));
    let nonzero = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| !s.get(i, j).is_zero()).count();
    assert_eq!(nonzero, 2);
}

#[test]
fn invariant_counts() {
    let r = invariant_count(&build_t(4).unwrap(), 5, 0);
    assert_eq!(r.to_string(), "n_I = 2 (dim 6, rank 4)");
    assert!(r.confirmed());
    let special = build_l(&CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1])])).unwrap();
    assert_eq!(invariant_count(&special, 5, 0).count, 3);
    let generic = build_l(&CharMatrixSpec::diagonal(4, vec![qs(&[1, 2, 3])])).unwrap();
    assert_eq!(invariant_count(&generic, 5, 0).count, 1);
    let r = invariant_count(&build_l_full_rank(4).unwrap(), 5, 0);
    assert_eq!(r.count, 1);
    assert!(r.consistent());
}

#[test]
fn nilradical_counts_confirmed_symbolically() {
    for m in 3..=9 {
        let r = invariant_count(&build_t(m).unwrap(), 5, 0);
        assert_eq!(r.count, m / 2, "T({m})");
        assert!(r.confirmed(), "T({m}) {:?}", r.confirmation);
    }
}

#[test]
fn json_round_trip() {
    let spec = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1]), qs(&[0, 1, -1])]).with_sigma(1, 2, q(2));
    for alg in [build_t(4).unwrap(), build_l_full_rank(5).unwrap(), build_l(&spec).unwrap()] {
        let text = algebra_to_json(&alg);
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back.structure().collect::<Vec<_>>(), alg.structure().collect::<Vec<_>>());
        assert_eq!(algebra_to_json(&back), text);
    }
    let text = algebra_to_json(&build_t(3).unwrap());
    assert!(text.find("\"M\"").unwrap() < text.find("\"basis\"").unwrap());
    assert!(text.contains("\"N_1_3\""));
}

#[test]
fn json_errors() {
    let err = algebra_from_json("{\n  \"M\": 3,\n  \"f\": 0,\n  \"basis\": [,]\n}").unwrap_err();
    let AlgebraError::Malformed(msg) = err else { panic!("expected malformed") };
    assert!(msg.contains("line 4"), "{msg}");
    let spec_only = r#"{"M": 4, "f": 1, "basis": [], "char_matrices": [{"diag": ["1", "0", "-1"]}]}"#;
    assert_eq!(algebra_from_json(spec_only).unwrap().dim(), 7);
    let bad_jacobi = r#"{"M": 3, "f": 0, "basis": [], "brackets": [
        {"i": "N_1_2", "j": "N_2_3", "terms": [{"k": "N_1_3", "c": "1"}]},
        {"i": "N_1_2", "j": "N_1_3", "terms": [{"k": "N_1_2", "c": "1"}]}]}"#;
    assert!(matches!(algebra_from_json(bad_jacobi), Err(AlgebraError::JacobiViolation(..))));
    let wrong_basis = r#"{"M": 3, "f": 0, "basis": ["N_1_3", "N_1_2", "N_2_3"]}"#;
    assert!(matches!(algebra_from_json(wrong_basis), Err(AlgebraError::Malformed(_))));
}
