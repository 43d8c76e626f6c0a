use serde::Serialize;

use super::determinants::z;
use crate::algebra::n_field;
use crate::error::CatalogError;
use crate::symbolic::{Polynomial, Universe, VarId, VectorField};

/// One reduced operator applied to one corner determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofactorCase {
    pub operator: String,
    pub determinant: usize,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofactorReport {
    pub m: usize,
    /// Reduced fields agree with the full `Nhat_ik` truncated to the corner block.
    pub reductions_match: bool,
    pub cases: Vec<CofactorCase>,
}

impl CofactorReport {
    pub fn pass(&self) -> bool {
        self.reductions_match && self.cases.iter().all(|c| c.zero)
    }
}

fn n(i: usize, k: usize) -> Polynomial {
    Polynomial::var(VarId::n(i, k))
}

/// Checks that every `Z_beta` is killed by the row operators `sum_b n_ib d/dn_kb`
/// (`1 <= i < k <= [M/2]`) and the column operators `-sum_a n_ak d/dn_ai`
/// (`M-[M/2]+1 <= i < k <= M`) acting on the upper-right corner block.
pub fn cofactor_annihilation_check(m: usize) -> Result<CofactorReport, CatalogError> {
    if m < 4 {
        return Err(CatalogError::RangeError(format!("corner block check needs M >= 4, got {m}")));
    }
    let p = m / 2;
    let c0 = m - p + 1;
    let u = Universe::new(m, 0);
    let in_block = |v: VarId| matches!(v, VarId::N(i, k) if (i as usize) <= p && (k as usize) >= c0);
    let zs: Vec<Polynomial> = (1..=p).map(|beta| z(m, beta)).collect::<Result<_, _>>()?;

    let mut reductions_match = true;
    let mut cases = Vec::new();
    let mut check = |label: String, reduced: VectorField, full: VectorField| {
        if full.reduce_to(&in_block) != reduced {
            reductions_match = false;
        }
        for (beta, zb) in zs.iter().enumerate() {
            cases.push(CofactorCase { operator: label.clone(), determinant: beta + 1, zero: reduced.apply_poly(zb).is_zero() });
        }
    };
    for i in 1..=p {
        for k in i + 1..=p {
            let reduced = VectorField::from_components((c0..=m).map(|b| (VarId::n(k, b), n(i, b))));
            check(format!("N_{i}_{k}"), reduced, n_field(&u, None, i, k));
        }
    }
    for i in c0..=m {
        for k in i + 1..=m {
            let reduced = VectorField::from_components((1..=p).map(|a| (VarId::n(a, i), -n(a, k))));
            check(format!("N_{i}_{k}"), reduced, n_field(&u, None, i, k));
        }
    }
    Ok(CofactorReport { m, reductions_match, cases })
}
