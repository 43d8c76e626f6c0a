use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::error::AlgebraError;
use crate::symbolic::matrix::RationalMatrix;
use crate::symbolic::rational::{fmt_q, parse_q, Q};
use crate::symbolic::{Polynomial, Universe, VarId};

/// One off-diagonal entry `A_{row, col}` of a characteristic matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffDiagonal {
    pub row: VarId,
    pub col: VarId,
    pub value: Q,
}

/// Characteristic matrices `A^1..A^f` and the constants `sigma^{ab}` of an `L(M, f)`.
///
/// Only the free diagonal entries `a_{i(i+1)}` are stored; `a_{ik}` for `k > i + 1` is the
/// sum `a_{i(i+1)} + ... + a_{(k-1)k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrixSpec {
    pub m: usize,
    pub diag: Vec<Vec<Q>>,
    pub off_diag: Vec<Vec<OffDiagonal>>,
    pub sigma: Vec<Vec<Q>>,
}

fn violation(constraint: &str, detail: impl Into<String>) -> AlgebraError {
    AlgebraError::CanonicalFormViolation { constraint: constraint.into(), detail: detail.into() }
}

/// Whether `(row, col)` is one of the off-diagonal positions a canonical matrix may use.
pub fn is_allowed_slot(m: usize, row: VarId, col: VarId) -> bool {
    let (VarId::N(ri, rk), VarId::N(ci, ck)) = (row, col) else {
        return false;
    };
    let (ri, rk, ci, ck) = (ri as usize, rk as usize, ci as usize, ck as usize);
    if rk != ri + 1 || m < 3 {
        return false;
    }
    let first = ri == 1 && (ci, ck) == (2, m);
    let middle = (2..=m.saturating_sub(2)).contains(&ri) && (ci, ck) == (1, m);
    let last = ri == m - 1 && (ci, ck) == (1, m - 1);
    first || middle || last
}

impl CharMatrixSpec {
    /// Diagonal matrices from their free entries, no sigma.
    pub fn diagonal(m: usize, diag: Vec<Vec<Q>>) -> Self {
        let f = diag.len();
        CharMatrixSpec { m, diag, off_diag: vec![Vec::new(); f], sigma: vec![vec![Q::zero(); f]; f] }
    }

    pub fn with_off_diagonal(mut self, alpha: usize, row: VarId, col: VarId, value: Q) -> Self {
        self.off_diag[alpha - 1].push(OffDiagonal { row, col, value });
        self
    }

    /// Sets `sigma^{ab} = value` and `sigma^{ba} = -value`.
    pub fn with_sigma(mut self, a: usize, b: usize, value: Q) -> Self {
        self.sigma[b - 1][a - 1] = -value.clone();
        self.sigma[a - 1][b - 1] = value;
        self
    }

    pub fn f(&self) -> usize {
        self.diag.len()
    }

    pub fn universe(&self) -> Universe {
        Universe::new(self.m, self.f())
    }

    /// `a^alpha_{ik}` (alpha is 1-based).
    pub fn diag_entry(&self, alpha: usize, i: usize, k: usize) -> Q {
        (i..k).map(|p| self.diag[alpha - 1][p - 1].clone()).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.off_diag.iter().all(|o| o.iter().all(|e| e.value.is_zero()))
    }

    pub fn has_sigma(&self) -> bool {
        self.sigma.iter().flatten().any(|s| !s.is_zero())
    }

    /// `[X^alpha, N_ik] = sum_pq A_{ik,pq} N_pq` as a sparse row.
    pub fn row_image(&self, alpha: usize, n: VarId) -> Vec<(VarId, Q)> {
        let VarId::N(i, k) = n else { panic!("row_image takes an N basis element") };
        let mut out = Vec::new();
        let d = self.diag_entry(alpha, i as usize, k as usize);
        if !d.is_zero() {
            out.push((n, d));
        }
        for e in &self.off_diag[alpha - 1] {
            if e.row == n && !e.value.is_zero() {
                out.push((e.col, e.value.clone()));
            }
        }
        out
    }

    /// `Gamma^alpha_{ik}`: the off-diagonal part of row `ik` as a linear form in `n`.
    pub fn gamma(&self, alpha: usize, n: VarId) -> Polynomial {
        let mut out = Polynomial::zero();
        for e in &self.off_diag[alpha - 1] {
            if e.row == n {
                out = &out + &Polynomial::var(e.col).scale(&e.value);
            }
        }
        out
    }

    /// `A^alpha` as a dense `r x r` matrix in canonical order.
    pub fn matrix(&self, alpha: usize) -> Vec<Vec<Q>> {
        let u = Universe::new(self.m, 0);
        let r = u.r();
        let mut a = vec![vec![Q::zero(); r]; r];
        for (ri, row) in u.n_vars().enumerate() {
            for (col, v) in self.row_image(alpha, row) {
                a[ri][u.index(col).unwrap()] += v;
            }
        }
        a
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let m = self.m;
        let f = self.f();
        if m < 2 {
            return Err(AlgebraError::InvalidSize(m));
        }
        if f == 0 {
            return Err(violation("shape", "at least one characteristic matrix is required"));
        }
        if f > m - 1 {
            return Err(violation("maximal count", format!("f = {f} exceeds M - 1 = {}", m - 1)));
        }
        if self.off_diag.len() != f || self.sigma.len() != f || self.sigma.iter().any(|r| r.len() != f) {
            return Err(AlgebraError::ShapeMismatch("off-diagonal or sigma tables do not match f".into()));
        }
        for (alpha, d) in self.diag.iter().enumerate() {
            if d.len() != m - 1 {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "A^{} has {} free diagonal entries, expected {}",
                    alpha + 1,
                    d.len(),
                    m - 1
                )));
            }
        }
        let u = Universe::new(m, 0);
        for alpha in 1..=f {
            for e in &self.off_diag[alpha - 1] {
                if !u.contains(e.row) || !u.contains(e.col) {
                    return Err(violation("upper triangular", format!("A^{alpha}_({}, {}) out of range", e.row, e.col)));
                }
                if e.value.is_zero() {
                    continue;
                }
                if u.index(e.col) <= u.index(e.row) {
                    return Err(violation(
                        "upper triangular",
                        format!("A^{alpha}_({}, {}) lies on or below the diagonal", e.row, e.col),
                    ));
                }
                if !is_allowed_slot(m, e.row, e.col) {
                    return Err(violation(
                        "off-diagonal slot",
                        format!("A^{alpha}_({}, {}) is not an allowed off-diagonal position", e.row, e.col),
                    ));
                }
                let (VarId::N(ri, rk), VarId::N(ci, ck)) = (e.row, e.col) else { unreachable!() };
                for beta in 1..=f {
                    let a = self.diag_entry(beta, ri as usize, rk as usize);
                    let b = self.diag_entry(beta, ci as usize, ck as usize);
                    if a != b {
                        return Err(violation(
                            "resonance",
                            format!(
                                "A^{alpha}_({}, {}) needs a^{beta}_{{{ri}{rk}}} = a^{beta}_{{{ci}{ck}}}, got {} vs {}",
                                e.row,
                                e.col,
                                fmt_q(&a),
                                fmt_q(&b)
                            ),
                        ));
                    }
                }
            }
        }
        for a in 0..f {
            if !self.sigma[a][a].is_zero() {
                return Err(violation("sigma antisymmetry", format!("sigma^{{{0}{0}}} must vanish", a + 1)));
            }
            for b in 0..f {
                if self.sigma[a][b] != -self.sigma[b][a].clone() {
                    return Err(violation("sigma antisymmetry", format!("sigma^{{{}{}}}", a + 1, b + 1)));
                }
            }
        }
        if self.has_sigma() {
            for gamma in 1..=f {
                let a1m = self.diag_entry(gamma, 1, m);
                if !a1m.is_zero() {
                    return Err(violation(
                        "sigma support",
                        format!("sigma is nonzero while a^{gamma}_{{1{m}}} = {}", fmt_q(&a1m)),
                    ));
                }
            }
        }
        if f >= 2 {
            let mats: Vec<Vec<Vec<Q>>> = (1..=f).map(|a| self.matrix(a)).collect();
            for a in 0..f {
                for b in a + 1..f {
                    if mat_mul(&mats[a], &mats[b]) != mat_mul(&mats[b], &mats[a]) {
                        return Err(violation("commuting", format!("A^{} and A^{} do not commute", a + 1, b + 1)));
                    }
                }
            }
        }
        let mats: Vec<Vec<Vec<Q>>> = (1..=f).map(|a| self.matrix(a)).collect();
        if !nilindependent(&mats)? {
            return Err(AlgebraError::NilindependenceViolation);
        }
        Ok(())
    }
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Whether no nontrivial combination of the upper triangular matrices is nilpotent.
/// A triangular matrix is nilpotent iff its diagonal vanishes, so this is linear
/// independence of the diagonals.
pub fn nilindependent(mats: &[Vec<Vec<Q>>]) -> Result<bool, AlgebraError> {
    let Some(first) = mats.first() else {
        return Ok(true);
    };
    let n = first.len();
    for (idx, m) in mats.iter().enumerate() {
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::ShapeMismatch(format!("matrix {} is not {n}x{n}", idx + 1)));
        }
        for i in 0..n {
            for j in 0..i {
                if !m[i][j].is_zero() {
                    return Err(AlgebraError::ShapeMismatch(format!("matrix {} is not upper triangular", idx + 1)));
                }
            }
        }
    }
    let diagonals = RationalMatrix::from_rows(mats.iter().map(|m| (0..n).map(|i| m[i][i].clone()).collect()).collect());
    Ok(diagonals.rank() == mats.len())
}

/// JSON form of a [`CharMatrixSpec`], shared with the algebra file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharMatrixJson {
    /// Free diagonal entries `a_{12}, a_{23}, ..., a_{(M-1)M}` as `p/q` strings.
    pub diag: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub off_diag: Vec<OffDiagonalJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffDiagonalJson {
    pub row: String,
    pub col: String,
    pub c: String,
}

impl CharMatrixSpec {
    pub fn to_json(&self) -> (Vec<CharMatrixJson>, Vec<Vec<String>>) {
        let mats = (0..self.f())
            .map(|a| CharMatrixJson {
                diag: self.diag[a].iter().map(fmt_q).collect(),
                off_diag: self.off_diag[a]
                    .iter()
                    .map(|e| OffDiagonalJson {
                        row: e.row.basis_label(),
                        col: e.col.basis_label(),
                        c: fmt_q(&e.value),
                    })
                    .collect(),
            })
            .collect();
        let sigma = self.sigma.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
        (mats, sigma)
    }

    pub fn from_json(m: usize, mats: &[CharMatrixJson], sigma: Option<&[Vec<String>]>) -> Result<Self, AlgebraError> {
        let bad = |e: crate::error::ParseError| AlgebraError::Malformed(e.message);
        let f = mats.len();
        let mut diag = Vec::with_capacity(f);
        let mut off_diag = Vec::with_capacity(f);
        for mat in mats {
            diag.push(mat.diag.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>().map_err(bad)?);
            let mut offs = Vec::new();
            for e in &mat.off_diag {
                offs.push(OffDiagonal {
                    row: VarId::parse_basis_label(&e.row).map_err(bad)?,
                    col: VarId::parse_basis_label(&e.col).map_err(bad)?,
                    value: parse_q(&e.c).map_err(bad)?,
                });
            }
            off_diag.push(offs);
        }
        let sigma = match sigma {
            None => vec![vec![Q::zero(); f]; f],
            Some(rows) => rows
                .iter()
                .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(bad)?,
        };
        Ok(CharMatrixSpec { m, diag, off_diag, sigma })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::q;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|x| q(*x)).collect()
    }

    #[test]
    fn derived_diagonals() {
        let s = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1])]);
        let diag: Vec<Q> = (0..6).map(|i| s.matrix(1)[i][i].clone()).collect();
        assert_eq!(diag, qs(&[1, 0, -1, 1, -1, 0]));
        s.validate().unwrap();
    }

    #[test]
    fn sigma_requires_vanishing_corner() {
        let s = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, 0]), qs(&[0, 1, -1])]).with_sigma(1, 2, q(1));
        assert!(matches!(s.validate(), Err(AlgebraError::CanonicalFormViolation { ref constraint, .. }) if constraint == "sigma support"));
    }

    #[test]
    fn resonance_and_slots() {
        // lambda_2 = A_{23,14} needs a_23 = a_14
        let ok = CharMatrixSpec::diagonal(4, vec![qs(&[1, 2, -1])]).with_off_diagonal(1, VarId::n(2, 3), VarId::n(1, 4), q(1));
        ok.validate().unwrap();
        let bad = CharMatrixSpec::diagonal(4, vec![qs(&[1, 3, -2])]).with_off_diagonal(1, VarId::n(2, 3), VarId::n(1, 4), q(1));
        assert!(matches!(bad.validate(), Err(AlgebraError::CanonicalFormViolation { ref constraint, .. }) if constraint == "resonance"));
        let slot = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, -1])]).with_off_diagonal(1, VarId::n(1, 2), VarId::n(1, 3), q(1));
        assert!(matches!(slot.validate(), Err(AlgebraError::CanonicalFormViolation { ref constraint, .. }) if constraint == "off-diagonal slot"));
        assert!(is_allowed_slot(5, VarId::n(3, 4), VarId::n(1, 5)));
        assert!(!is_allowed_slot(5, VarId::n(4, 5), VarId::n(1, 5)));
        assert!(is_allowed_slot(5, VarId::n(4, 5), VarId::n(1, 4)));
    }

    #[test]
    fn nilindependence() {
        let s = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, 0]), qs(&[0, 1, 0]), qs(&[0, 0, 1])]);
        let mats: Vec<_> = (1..=3).map(|a| s.matrix(a)).collect();
        assert!(nilindependent(&mats).unwrap());
        let a = s.matrix(1);
        let twice: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|x| x * q(2)).collect()).collect();
        assert!(!nilindependent(&[a.clone(), twice]).unwrap());
        let strict = vec![vec![q(0), q(1)], vec![q(0), q(0)]];
        let strict2 = vec![vec![q(0), q(5)], vec![q(0), q(0)]];
        assert!(!nilindependent(&[strict.clone(), strict2]).unwrap());
        let lower = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        assert!(matches!(nilindependent(&[lower]), Err(AlgebraError::ShapeMismatch(_))));
        assert!(matches!(nilindependent(&[strict, a]), Err(AlgebraError::ShapeMismatch(_))));
        let dependent = CharMatrixSpec::diagonal(4, vec![qs(&[1, 0, 0]), qs(&[2, 0, 0])]);
        assert_eq!(dependent.validate(), Err(AlgebraError::NilindependenceViolation));
    }
}
