use num_traits::{One, Zero};

use super::charmat::CharMatrixSpec;
use super::lie::LieAlgebra;
use crate::error::AlgebraError;
use crate::symbolic::{Q, Universe, VarId};

/// `[N_ik, N_ab] = delta_ka N_ib - delta_bi N_ak`.
fn nilradical_brackets(u: &Universe) -> Vec<((usize, usize), Vec<(usize, Q)>)> {
    let idx = |v: VarId| u.index(v).expect("variable in universe");
    let mut out = Vec::new();
    let ns: Vec<VarId> = u.n_vars().collect();
    for (p, &left) in ns.iter().enumerate() {
        for &right in &ns[p + 1..] {
            let (VarId::N(i, k), VarId::N(a, b)) = (left, right) else { unreachable!() };
            let mut terms = Vec::new();
            if k == a {
                terms.push((idx(VarId::N(i, b)), Q::one()));
            }
            if b == i {
                terms.push((idx(VarId::N(a, k)), -Q::one()));
            }
            if !terms.is_empty() {
                out.push(((idx(left), idx(right)), terms));
            }
        }
    }
    out
}

/// The nilpotent algebra `T(M)` of strictly upper triangular `M x M` matrices.
pub fn build_t(m: usize) -> Result<LieAlgebra, AlgebraError> {
    if m < 2 {
        return Err(AlgebraError::InvalidSize(m));
    }
    let u = Universe::new(m, 0);
    LieAlgebra::new(format!("T({m})"), u, nilradical_brackets(&u), None)
}

/// The solvable algebra `L(M, f)` with nilradical `T(M)` defined by `spec`.
pub fn build_l(spec: &CharMatrixSpec) -> Result<LieAlgebra, AlgebraError> {
    spec.validate()?;
    let m = spec.m;
    let f = spec.f();
    let u = Universe::new(m, f);
    let idx = |v: VarId| u.index(v).expect("variable in universe");
    let mut brackets = nilradical_brackets(&u);
    for alpha in 1..=f {
        let xa = idx(VarId::x(alpha));
        for n in u.n_vars() {
            let image: Vec<(usize, Q)> = spec.row_image(alpha, n).into_iter().map(|(v, c)| (idx(v), c)).collect();
            if !image.is_empty() {
                brackets.push(((xa, idx(n)), image));
            }
        }
        for beta in alpha + 1..=f {
            let s = &spec.sigma[alpha - 1][beta - 1];
            if !s.is_zero() {
                brackets.push(((xa, idx(VarId::x(beta))), vec![(idx(VarId::n(1, m)), s.clone())]));
            }
        }
    }
    LieAlgebra::new(format!("L({m},{f})"), u, brackets, Some(spec.clone()))
}

/// Free diagonal entries of the maximal-rank extension: `a^alpha_{p(p+1)} = delta_{alpha p}`.
pub fn full_rank_spec(m: usize) -> CharMatrixSpec {
    let diag = (1..m).map(|alpha| (1..m).map(|p| if p == alpha { Q::one() } else { Q::zero() }).collect()).collect();
    CharMatrixSpec::diagonal(m, diag)
}

/// `L(M, M-1)` with diagonal characteristic matrices.
pub fn build_l_full_rank(m: usize) -> Result<LieAlgebra, AlgebraError> {
    if m < 3 {
        return Err(AlgebraError::InvalidSize(m));
    }
    build_l(&full_rank_spec(m))
}
