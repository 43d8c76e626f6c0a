use num_traits::Zero;

use super::charmat::CharMatrixSpec;
use super::lie::LieAlgebra;
use crate::symbolic::{Polynomial, Universe, VarId, VectorField};

/// `Y_i = sum_{j,k} C_ij^k y_k d/dy_j`, one field per basis element.
pub fn coadjoint_fields(alg: &LieAlgebra) -> Vec<VectorField> {
    let u = alg.universe();
    (0..alg.dim())
        .map(|i| {
            let mut field = VectorField::zero();
            for j in 0..alg.dim() {
                let mut c = Polynomial::zero();
                for (k, v) in alg.bracket(i, j) {
                    c.add_term(crate::symbolic::Monomial::var(u.var(k)), v);
                }
                field.add_component(u.var(j), c);
            }
            field
        })
        .collect()
}

/// Closed form of the field for `N_ik`:
/// `sum_{b>k} n_ib d/dn_kb - sum_{a<i} n_ak d/dn_ai - sum_alpha (a^alpha_ik n_ik + Gamma^alpha_ik) d/dx^alpha`.
pub fn n_field(u: &Universe, spec: Option<&CharMatrixSpec>, i: usize, k: usize) -> VectorField {
    let n = |a: usize, b: usize| Polynomial::var(VarId::n(a, b));
    let mut field = VectorField::zero();
    for b in k + 1..=u.m {
        field.add_component(VarId::n(k, b), n(i, b));
    }
    for a in 1..i {
        field.add_component(VarId::n(a, i), -n(a, k));
    }
    if let Some(spec) = spec {
        for alpha in 1..=spec.f() {
            let d = spec.diag_entry(alpha, i, k);
            let c = &n(i, k).scale(&d) + &spec.gamma(alpha, VarId::n(i, k));
            field.add_component(VarId::x(alpha), -c);
        }
    }
    field
}

/// Closed form of the field for `X^alpha`:
/// `sum_ik (a^alpha_ik n_ik + Gamma^alpha_ik) d/dn_ik + sum_beta sigma^{alpha beta} n_1M d/dx^beta`.
pub fn x_field(spec: &CharMatrixSpec, alpha: usize) -> VectorField {
    let u = spec.universe();
    let mut field = VectorField::zero();
    for v in u.n_vars() {
        let VarId::N(i, k) = v else { unreachable!() };
        let d = spec.diag_entry(alpha, i as usize, k as usize);
        field.add_component(v, &Polynomial::var(v).scale(&d) + &spec.gamma(alpha, v));
    }
    for beta in 1..=spec.f() {
        let s = &spec.sigma[alpha - 1][beta - 1];
        if !s.is_zero() {
            field.add_component(VarId::x(beta), Polynomial::var(VarId::n(1, u.m)).scale(s));
        }
    }
    field
}

/// The closed-form fields in basis order, built without the structure constants.
pub fn closed_form_fields(alg: &LieAlgebra) -> Vec<VectorField> {
    let u = alg.universe();
    u.vars()
        .map(|v| match v {
            VarId::N(i, k) => n_field(&u, alg.spec(), i as usize, k as usize),
            VarId::X(a) => x_field(alg.spec().expect("X element without characteristic matrices"), a as usize),
        })
        .collect()
}
