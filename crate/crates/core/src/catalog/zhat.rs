use super::determinants::z_matrix;
use crate::algebra::{n_field, CharMatrixSpec, LieAlgebra};
use crate::error::CatalogError;
use crate::symbolic::{Polynomial, Q, VarId, VectorField};

/// `Zhat_mu = sum_j det(Z_mu matrix with column j replaced by the operators N_{a(M-mu+j)})`,
/// expanded along the replaced column. All `n`-derivatives must cancel.
pub fn zhat_operator(alg: &LieAlgebra, mu: usize) -> Result<VectorField, CatalogError> {
    let m = alg.m();
    let zm = z_matrix(m, mu)?;
    let u = alg.universe();
    let mut out = VectorField::zero();
    for j in 0..mu {
        for a in 0..mu {
            let cof = zm.cofactor(a, j);
            if cof.is_zero() {
                continue;
            }
            let field = n_field(&u, alg.spec(), a + 1, m - mu + 1 + j);
            out = out.add(&field.mul_poly(&cof));
        }
    }
    let residual = out.restrict(|v| v.is_n());
    if !residual.is_zero() {
        return Err(CatalogError::ResidualNDerivative(residual.to_string()));
    }
    Ok(out)
}

/// Sum of `a^alpha_{k(M+1-k)}` over `k = 1..j`; `Z_j` scales with this weight under `X^alpha`.
pub fn corner_weight(spec: &CharMatrixSpec, alpha: usize, j: usize) -> Q {
    (1..=j).map(|k| spec.diag_entry(alpha, k, spec.m + 1 - k)).sum()
}

/// `-Z_j sum_alpha (sum_{k<=j} a^alpha_{k(M+1-k)}) d/dx^alpha`, the reduced operator for
/// diagonal characteristic matrices.
pub fn diagonal_zhat(spec: &CharMatrixSpec, j: usize) -> Result<VectorField, CatalogError> {
    let zj = super::determinants::z(spec.m, j)?;
    let mut out = VectorField::zero();
    for alpha in 1..=spec.f() {
        out.add_component(VarId::x(alpha), zj.scale(&-corner_weight(spec, alpha, j)));
    }
    Ok(out)
}

/// Coefficients of `Zhat_mu` on `d/dx^1 .. d/dx^f`.
pub fn x_coefficients(field: &VectorField, f: usize) -> Vec<Polynomial> {
    (1..=f).map(|a| field.coefficient(VarId::x(a))).collect()
}
