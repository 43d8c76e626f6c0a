use serde::{Deserialize, Serialize};

use super::build::build_l;
use super::charmat::{CharMatrixJson, CharMatrixSpec};
use super::lie::LieAlgebra;
use crate::error::AlgebraError;
use crate::symbolic::rational::{fmt_q, parse_q};
use crate::symbolic::{Universe, VarId};

/// Interchange form of an algebra. Field order is the serialized key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    #[serde(rename = "M")]
    pub m: usize,
    pub f: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_matrices: Option<Vec<CharMatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: String,
    pub j: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub k: String,
    pub c: String,
}

impl AlgebraJson {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let u = alg.universe();
        let brackets = alg
            .structure()
            .map(|((i, j), terms)| BracketJson {
                i: u.var(i).basis_label(),
                j: u.var(j).basis_label(),
                terms: terms.iter().map(|(k, c)| TermJson { k: u.var(*k).basis_label(), c: fmt_q(c) }).collect(),
            })
            .collect();
        let (char_matrices, sigma) = match alg.spec() {
            Some(spec) => {
                let (mats, sigma) = spec.to_json();
                (Some(mats), Some(sigma))
            }
            None => (None, None),
        };
        AlgebraJson { m: u.m, f: u.f, basis: u.vars().map(|v| v.basis_label()).collect(), brackets, char_matrices, sigma }
    }

    /// Rebuilds and validates the algebra. When characteristic matrices are given the
    /// algebra is built from them and any listed brackets must agree.
    pub fn to_algebra(&self) -> Result<LieAlgebra, AlgebraError> {
        if self.m < 2 {
            return Err(AlgebraError::InvalidSize(self.m));
        }
        let u = Universe::new(self.m, self.f);
        let expected: Vec<String> = u.vars().map(|v| v.basis_label()).collect();
        if !self.basis.is_empty() && self.basis != expected {
            return Err(AlgebraError::Malformed(format!(
                "basis must be listed in canonical order: {}",
                expected.join(", ")
            )));
        }
        let bad = |e: crate::error::ParseError| AlgebraError::Malformed(e.message);
        let label_index = |s: &str| -> Result<usize, AlgebraError> {
            let v = VarId::parse_basis_label(s).map_err(bad)?;
            u.index(v).ok_or_else(|| AlgebraError::Malformed(format!("label {s} is outside the basis")))
        };
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let mut terms = Vec::with_capacity(b.terms.len());
            for t in &b.terms {
                terms.push((label_index(&t.k)?, parse_q(&t.c).map_err(bad)?));
            }
            brackets.push(((label_index(&b.i)?, label_index(&b.j)?), terms));
        }
        match &self.char_matrices {
            Some(mats) => {
                if mats.len() != self.f {
                    return Err(AlgebraError::ShapeMismatch(format!(
                        "f = {} but {} characteristic matrices given",
                        self.f,
                        mats.len()
                    )));
                }
                let spec = CharMatrixSpec::from_json(self.m, mats, self.sigma.as_deref())?;
                let alg = build_l(&spec)?;
                if !brackets.is_empty() {
                    let listed = LieAlgebra::new(alg.name(), u, brackets, None)?;
                    if listed.structure().ne(alg.structure()) {
                        return Err(AlgebraError::Malformed(
                            "brackets disagree with the characteristic matrices".into(),
                        ));
                    }
                }
                Ok(alg)
            }
            None => {
                if self.sigma.is_some() {
                    return Err(AlgebraError::Malformed("sigma given without char_matrices".into()));
                }
                let name = if self.f == 0 { format!("T({})", self.m) } else { format!("L({},{})", self.m, self.f) };
                LieAlgebra::new(name, u, brackets, None)
            }
        }
    }
}

pub fn algebra_to_json(alg: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(alg)).expect("algebra serializes")
}

/// Parses the JSON algebra format. Syntax errors carry the serde line/column position.
pub fn algebra_from_json(text: &str) -> Result<LieAlgebra, AlgebraError> {
    let parsed: AlgebraJson = serde_json::from_str(text).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
    parsed.to_algebra()
}
