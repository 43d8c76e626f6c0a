use std::fmt;

use super::lie::LieAlgebra;
use crate::sampling::{self, Point};
use crate::symbolic::{Monomial, PolyMatrix, Polynomial};

/// Symbolic rank confirmation is attempted up to this dimension.
pub const SYMBOLIC_CONFIRM_DIM: usize = 45;
/// Term budget per entry during symbolic elimination.
pub const SYMBOLIC_TERM_BUDGET: usize = 5_000;

/// `S_ij = sum_k C_ij^k y_k`.
pub fn structure_matrix(alg: &LieAlgebra) -> PolyMatrix {
    let u = alg.universe();
    let dim = alg.dim();
    let s = PolyMatrix::from_fn(dim, dim, |i, j| {
        let mut p = Polynomial::zero();
        for (k, c) in alg.bracket(i, j) {
            p.add_term(Monomial::var(u.var(k)), c);
        }
        p
    });
    assert!(s.is_antisymmetric(), "structure matrix of {} is not antisymmetric", alg.name());
    s
}

/// How the generic rank was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankConfirmation {
    /// Fraction-free elimination over the polynomial ring gave this rank.
    Symbolic(usize),
    /// Elimination exceeded its budget or the dimension limit.
    Unconfirmed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub dim: usize,
    pub rank: usize,
    pub count: usize,
    pub trial_ranks: Vec<usize>,
    pub confirmation: RankConfirmation,
}

impl RankReport {
    /// Sampled rank agrees with symbolic rank (or none was computed).
    pub fn consistent(&self) -> bool {
        match self.confirmation {
            RankConfirmation::Symbolic(r) => r == self.rank,
            RankConfirmation::Unconfirmed => true,
        }
    }

    pub fn confirmed(&self) -> bool {
        self.confirmation == RankConfirmation::Symbolic(self.rank)
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n_I = {} (dim {}, rank {})", self.count, self.dim, self.rank)
    }
}

/// Maximum rank of the structure matrix over `trials` random integer points.
/// Each trial uses its own stream derived from `seed`.
pub fn sampled_rank(s: &PolyMatrix, u: &crate::symbolic::Universe, trials: usize, seed: u64) -> Vec<usize> {
    assert!(trials >= 1, "at least one trial is required");
    (0..trials)
        .map(|t| {
            let mut rng = sampling::rng_stream(seed, t as u64);
            let point = Point::random(u, &mut rng);
            let r = s.eval(&point.as_fn()).expect("structure matrix is polynomial").rank();
            assert!(r % 2 == 0, "odd rank {r} of an antisymmetric matrix");
            r
        })
        .collect()
}

/// Number of functionally independent invariants, `dim - generic rank`.
pub fn invariant_count(alg: &LieAlgebra, trials: usize, seed: u64) -> RankReport {
    invariant_count_with(alg, trials, seed, true)
}

pub fn invariant_count_with(alg: &LieAlgebra, trials: usize, seed: u64, confirm: bool) -> RankReport {
    let s = structure_matrix(alg);
    let trial_ranks = sampled_rank(&s, &alg.universe(), trials, seed);
    let rank = *trial_ranks.iter().max().unwrap();
    let confirmation = if confirm && alg.dim() <= SYMBOLIC_CONFIRM_DIM {
        match s.symbolic_rank(SYMBOLIC_TERM_BUDGET) {
            Some(r) => RankConfirmation::Symbolic(r),
            None => RankConfirmation::Unconfirmed,
        }
    } else {
        RankConfirmation::Unconfirmed
    };
    RankReport { dim: alg.dim(), rank, count: alg.dim() - rank, trial_ranks, confirmation }
}
