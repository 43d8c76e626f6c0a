use serde::{Deserialize, Serialize};

use crate::algebra::{coadjoint_fields, LieAlgebra};
use crate::symbolic::InvariantExpr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub generator: String,
    pub zero: bool,
    pub residual: Option<String>,
}

/// Result of applying every coadjoint field to a candidate invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub algebra: String,
    pub invariant: String,
    pub per_generator: Vec<GeneratorCheck>,
    pub pass: bool,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn failing(&self) -> impl Iterator<Item = &GeneratorCheck> {
        self.per_generator.iter().filter(|g| !g.zero)
    }
}

pub fn verify_invariant(alg: &LieAlgebra, e: &InvariantExpr) -> Certificate {
    let fields = coadjoint_fields(alg);
    let per_generator: Vec<GeneratorCheck> = fields
        .iter()
        .enumerate()
        .map(|(i, field)| {
            let d = e.derive(field).normalized();
            let zero = d.is_zero();
            GeneratorCheck { generator: alg.label(i), zero, residual: (!zero).then(|| d.to_string()) }
        })
        .collect();
    let pass = per_generator.iter().all(|g| g.zero);
    Certificate { algebra: alg.name().to_string(), invariant: e.to_string(), per_generator, pass }
}
