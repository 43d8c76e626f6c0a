use crate::error::CatalogError;
use crate::symbolic::{InvariantExpr, PolyMatrix, Polynomial, VarId};

/// `n_ik` as an entry of the strictly upper triangular matrix `Q`; zero for `i >= k`.
pub fn q_entry(i: usize, k: usize) -> Polynomial {
    if i < k {
        Polynomial::var(VarId::n(i, k))
    } else {
        Polynomial::zero()
    }
}

/// The `mu x mu` upper right corner of `Q`: rows `1..mu`, columns `M-mu+1..M`.
pub fn z_matrix(m: usize, mu: usize) -> Result<PolyMatrix, CatalogError> {
    if mu < 1 || mu > m / 2 {
        return Err(CatalogError::RangeError(format!("Z needs 1 <= mu <= {}, got mu = {mu} for M = {m}", m / 2)));
    }
    Ok(PolyMatrix::from_fn(mu, mu, |r, c| q_entry(r + 1, m - mu + 1 + c)))
}

/// `Z_mu`, the determinant of the upper right `mu x mu` corner.
pub fn z(m: usize, mu: usize) -> Result<Polynomial, CatalogError> {
    Ok(z_matrix(m, mu)?.determinant())
}

/// The bordered `(mu+1) x (mu+1)` matrix whose determinant is `W_rho^(mu)`: first column
/// `n_{a(rho+mu)}` over a zero, then the corner columns `M-mu+1..M` with the extra row
/// `rho + mu` at the bottom.
pub fn w_matrix(m: usize, mu: usize, rho: usize) -> Result<PolyMatrix, CatalogError> {
    let mu_max = (m.saturating_sub(1)) / 2;
    if mu < 1 || mu > mu_max {
        return Err(CatalogError::RangeError(format!("W needs 1 <= mu <= {mu_max}, got mu = {mu} for M = {m}")));
    }
    if rho < 1 || rho > m - 2 * mu {
        return Err(CatalogError::RangeError(format!(
            "W needs 1 <= rho <= {}, got rho = {rho} for M = {m}, mu = {mu}",
            m - 2 * mu
        )));
    }
    let pivot = rho + mu;
    Ok(PolyMatrix::from_fn(mu + 1, mu + 1, |r, c| {
        let row = if r < mu { r + 1 } else { pivot };
        match (r < mu, c) {
            (true, 0) => q_entry(row, pivot),
            (false, 0) => Polynomial::zero(),
            (_, c) => q_entry(row, m - mu + c),
        }
    }))
}

pub fn w(m: usize, mu: usize, rho: usize) -> Result<Polynomial, CatalogError> {
    Ok(w_matrix(m, mu, rho)?.determinant())
}

/// `Z_1, ..., Z_[M/2]`.
pub fn theorem1_basis(m: usize) -> Vec<InvariantExpr> {
    (1..=m / 2).map(|mu| InvariantExpr::from(z(m, mu).expect("mu in range"))).collect()
}

/// `sum_rho W_rho^(mu)`.
pub fn w_sum(m: usize, mu: usize) -> Result<Polynomial, CatalogError> {
    let mut acc = Polynomial::zero();
    for rho in 1..=m - 2 * mu {
        acc = &acc + &w(m, mu, rho)?;
    }
    Ok(acc)
}
