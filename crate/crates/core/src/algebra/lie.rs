use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use super::charmat::CharMatrixSpec;
use crate::error::AlgebraError;
use crate::sampling;
use crate::symbolic::{Q, Universe, VarId};

/// Sparse vector over the basis, keyed by basis index.
pub type SparseVec = BTreeMap<usize, Q>;

/// Exhaustive Jacobi checking up to this dimension, random triples above.
pub const JACOBI_EXHAUSTIVE_DIM: usize = 30;
pub const JACOBI_RANDOM_TRIPLES: usize = 500;

/// A Lie algebra on the canonical basis `N_12, ..., N_1M, X_1, ..., X_f` with sparse
/// structure constants stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    universe: Universe,
    structure: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    spec: Option<CharMatrixSpec>,
}

fn add_into(acc: &mut SparseVec, k: usize, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(k).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&k);
    }
}

impl LieAlgebra {
    /// Builds and validates an algebra. Entries with `i > j` are flipped, `i == j` rejected.
    pub fn new(
        name: impl Into<String>,
        universe: Universe,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Q)>)>,
        spec: Option<CharMatrixSpec>,
    ) -> Result<Self, AlgebraError> {
        let dim = universe.dim();
        let mut structure: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= dim || j >= dim || terms.iter().any(|(k, _)| *k >= dim) {
                return Err(AlgebraError::Malformed(format!("bracket ({i}, {j}) refers to an index outside 0..{dim}")));
            }
            if i == j {
                if terms.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(AlgebraError::Malformed(format!("nonzero self-bracket of basis element {i}")));
                }
                continue;
            }
            let (a, b, sign) = if i < j { (i, j, Q::from_integer(1.into())) } else { (j, i, Q::from_integer((-1).into())) };
            let slot = structure.entry((a, b)).or_default();
            for (k, c) in terms {
                add_into(slot, k, c * &sign);
            }
        }
        let structure = structure
            .into_iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(key, v)| (key, v.into_iter().collect()))
            .collect();
        let alg = LieAlgebra { name: name.into(), universe, structure, spec };
        alg.check_jacobi()?;
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn m(&self) -> usize {
        self.universe.m
    }

    pub fn f(&self) -> usize {
        self.universe.f
    }

    pub fn dim(&self) -> usize {
        self.universe.dim()
    }

    pub fn spec(&self) -> Option<&CharMatrixSpec> {
        self.spec.as_ref()
    }

    /// Basis element `i` as the coordinate dual to it.
    pub fn basis(&self) -> Vec<VarId> {
        self.universe.vars().collect()
    }

    pub fn label(&self, i: usize) -> String {
        self.universe.var(i).basis_label()
    }

    /// Nonzero structure constants with `i < j`.
    pub fn structure(&self) -> impl Iterator<Item = ((usize, usize), &[(usize, Q)])> {
        self.structure.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// `[e_i, e_j]` as a sparse combination of basis elements.
    pub fn bracket(&self, i: usize, j: usize) -> SparseVec {
        if i == j {
            return SparseVec::new();
        }
        let (key, negate) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.structure.get(&key) {
            None => SparseVec::new(),
            Some(terms) => {
                terms.iter().map(|(k, c)| (*k, if negate { -c.clone() } else { c.clone() })).collect()
            }
        }
    }

    /// Bracket of a sparse vector with a basis element.
    pub fn bracket_vec(&self, a: &SparseVec, j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a {
            for (k, d) in self.bracket(*i, j) {
                add_into(&mut out, k, c * d);
            }
        }
        out
    }

    /// `[[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut out = self.bracket_vec(&self.bracket(i, j), k);
        for (idx, c) in self.bracket_vec(&self.bracket(j, k), i) {
            add_into(&mut out, idx, c);
        }
        for (idx, c) in self.bracket_vec(&self.bracket(k, i), j) {
            add_into(&mut out, idx, c);
        }
        out
    }

    fn check_jacobi(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        let fail = |i: usize, j: usize, k: usize| {
            Err(AlgebraError::JacobiViolation(self.label(i), self.label(j), self.label(k)))
        };
        if dim <= JACOBI_EXHAUSTIVE_DIM {
            for i in 0..dim {
                for j in i + 1..dim {
                    for k in j + 1..dim {
                        if !self.jacobiator(i, j, k).is_empty() {
                            return fail(i, j, k);
                        }
                    }
                }
            }
        } else {
            let mut rng = sampling::rng(0);
            for _ in 0..JACOBI_RANDOM_TRIPLES {
                let (i, j, k) = (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim));
                if !self.jacobiator(i, j, k).is_empty() {
                    return fail(i, j, k);
                }
            }
        }
        Ok(())
    }
}
