use trilie::algebra::{build_l, build_l_full_rank, build_t, invariant_count, CharMatrixSpec};
use trilie::catalog::*;
use trilie::error::CatalogError;
use trilie::sampling;
use trilie::symbolic::rational::{q, q_frac};
use trilie::symbolic::{InvariantExpr, Polynomial, Q, VarId};

fn qs(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| q(*x)).collect()
}

fn params(pairs: &[(&str, Q)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn n(i: usize, k: usize) -> Polynomial {
    Polynomial::var(VarId::n(i, k))
}

fn assert_entry(entry: &CatalogEntry) {
    for inv in &entry.invariants {
        let cert = verify_invariant(&entry.algebra, inv);
        let bad: Vec<_> = cert.failing().map(|g| format!("{}: {:?}", g.generator, g.residual)).collect();
        assert!(cert.pass, "{} / {inv}: {bad:?}", entry.algebra.name());
    }
    let u = entry.algebra.universe();
    assert_eq!(jacobian_rank(&entry.invariants, &u, 3, 0).unwrap(), entry.invariants.len(), "{}", entry.algebra.name());
    assert_eq!(entry.invariants.len(), entry.expected_count, "{}", entry.algebra.name());
    assert_eq!(invariant_count(&entry.algebra, 5, 0).count, entry.expected_count, "{}", entry.algebra.name());
}

#[test]
fn corner_determinants() {
    assert_eq!(z(4, 1).unwrap(), n(1, 4));
    assert_eq!(z(4, 2).unwrap(), &(&n(1, 3) * &n(2, 4)) - &(&n(1, 4) * &n(2, 3)));
    assert!(matches!(z(4, 3), Err(CatalogError::RangeError(_))));
    assert_eq!(w(3, 1, 1).unwrap(), &n(1, 2) * &n(2, 3));
    let p = &(&n(1, 2) * &n(2, 4)) + &(&n(1, 3) * &n(3, 4));
    assert_eq!(w_sum(4, 1).unwrap(), p);
    assert_eq!(theorem1_basis(7).len(), 3);
}

#[test]
fn nilpotent_basis_verifies() {
    for m in 2..=9 {
        assert_entry(&nilpotent_invariants(m).unwrap());
    }
}

#[test]
fn lemma_defaults_verify() {
    for family in Family::lemma_families() {
        let entry = lemma_invariants(*family, &Params::new()).unwrap();
        assert_entry(&entry);
    }
}

#[test]
fn lemma_random_parameters_verify() {
    let mut rng = sampling::rng(7);
    for family in Family::lemma_families() {
        for _ in 0..3 {
            let Some(p) = family.sample_parameters(&mut rng) else { continue };
            assert_entry(&lemma_invariants(*family, &p).unwrap());
        }
    }
}

#[test]
fn lemma_examples() {
    let e = lemma_invariants(Family::L41Case2, &params(&[("a12", q(1)), ("a23", q(2)), ("a34", q(3))])).unwrap();
    assert_entry(&e);
    let e = lemma_invariants(Family::L41Case1, &params(&[("a12", q(2)), ("a34", q(-2))])).unwrap();
    assert_entry(&e);
    let e = lemma_invariants(Family::L42Case3, &params(&[("sigma12", q_frac(-5, 3))])).unwrap();
    assert_entry(&e);
}

#[test]
fn lemma_conditions_rejected() {
    let bad = params(&[("a23", q(1))]);
    assert!(matches!(lemma_invariants(Family::L41Case1, &bad), Err(CatalogError::ConditionViolated(_))));
    let bad = params(&[("a12", q(2))]);
    assert!(matches!(lemma_invariants(Family::L42Case3, &bad), Err(CatalogError::ConditionViolated(_))));
    let bad = params(&[("mu", q(2))]);
    assert!(matches!(lemma_invariants(Family::L41Case3, &bad), Err(CatalogError::ConditionViolated(_))));
}

#[test]
fn lemma_negative_counts() {
    let a = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, 0]), qs(&[0, 1, 0])]);
    assert_eq!(invariant_count(&build_l(&a).unwrap(), 5, 0).count, 0);
    let b = CharMatrixSpec::diagonal(4, vec![qs(&[1, 1, -1]), qs(&[1, 0, -1])])
        .with_off_diagonal(2, VarId::n(2, 3), VarId::n(1, 4), q(1));
    assert_eq!(invariant_count(&build_l(&b).unwrap(), 5, 0).count, 0);
}

#[test]
fn full_rank_invariants_verify() {
    for m in 3..=9 {
        assert_entry(&prop1_invariants(m).unwrap());
    }
}

#[test]
fn diagonal_extensions_verify() {
    let mut rng = sampling::rng(3);
    for m in 4..=8 {
        // case 1 vectors
        for _ in 0..3 {
            let mut d: Vec<Q> = (0..m - 1).map(|_| sampling::random_nonzero_rational(&mut rng, 9)).collect();
            for i in 1..=m / 2 {
                d[m - i - 1] = -d[i - 1].clone();
            }
            if m % 2 == 0 {
                d[m / 2 - 1] = q(0);
            }
            assert!(is_diagonal_case1(&d));
            assert_entry(&prop2_invariants(m, &d).unwrap());
        }
        for _ in 0..3 {
            let d: Vec<Q> = (0..m - 1).map(|_| sampling::random_nonzero_rational(&mut rng, 9)).collect();
            assert!(!is_diagonal_case1(&d));
            assert_entry(&prop2_invariants(m, &d).unwrap());
        }
    }
}

#[test]
fn diagonal_degenerate_exponents() {
    // a15 + a24 = 0
    let d = qs(&[1, 1, 1, -5]);
    assert!(matches!(prop2_invariants(5, &d), Err(CatalogError::DegenerateExponent(_))));
    assert!(matches!(prop2_invariants(5, &qs(&[1, 2])), Err(CatalogError::RangeError(_))));
}

#[test]
fn zhat_operators() {
    let spec = CharMatrixSpec::diagonal(6, vec![qs(&[1, 2, 3, 4, 5])]);
    let alg = build_l(&spec).unwrap();
    for j in 1..=3 {
        assert_eq!(zhat_operator(&alg, j).unwrap(), diagonal_zhat(&spec, j).unwrap());
    }
    let t = build_t(6).unwrap();
    for j in 1..=3 {
        assert!(zhat_operator(&t, j).unwrap().is_zero());
    }
    let full = build_l_full_rank(5).unwrap();
    assert_eq!(zhat_operator(&full, 2).unwrap(), diagonal_zhat(full.spec().unwrap(), 2).unwrap());
}

#[test]
fn cofactor_checks() {
    for m in 4..=9 {
        let r = cofactor_annihilation_check(m).unwrap();
        assert!(r.reductions_match, "M = {m}");
        assert!(r.pass(), "M = {m}: {:?}", r.cases.iter().filter(|c| !c.zero).collect::<Vec<_>>());
    }
    assert!(cofactor_annihilation_check(3).is_err());
}

#[test]
fn certificate_reports_residuals() {
    let alg = build_t(4).unwrap();
    let cert = verify_invariant(&alg, &InvariantExpr::from(n(1, 2)));
    assert!(!cert.pass);
    assert!(cert.failing().count() > 0);
    assert!(cert.to_json().contains("\"per_generator\""));
}

#[test]
fn documented_examples() {
    let e = prop2_invariants(6, &qs(&[1, 2, 0, -2, -1])).unwrap();
    assert_eq!(e.family, Family::DiagonalCase1);
    assert_eq!(e.invariants.len(), 4);
    assert_entry(&e);
    let e = prop1_invariants(9).unwrap();
    assert_eq!(e.invariants.len(), 4);
    let e = prop1_invariants(5).unwrap();
    assert_eq!(e.invariants.len(), 2);
    let first = lemma_invariants(Family::L41Case1, &Params::new()).unwrap();
    assert_eq!(first.invariants[2].to_string(), "n_1_2*n_2_4 + n_3_4*n_1_3 + n_1_4*x_1");
    let alg = l4_algebra(1, &params(&[("a12", q(1)), ("a34", q(-1))])).unwrap();
    assert_eq!(invariant_count(&alg, 5, 0).to_string(), "n_I = 3 (dim 7, rank 4)");
}
