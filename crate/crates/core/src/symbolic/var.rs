use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// A coordinate on the dual space: `n_{ik}` (dual to `N_ik`) or `x^a` (dual to `X^a`).
///
/// Ordering follows the canonical basis order `n_12, n_23, ..., n_(M-1)M, n_13, ..., n_1M, x^1, ...`,
/// i.e. by superdiagonal, then by row. The order does not depend on `M`, so a polynomial
/// written over `T(M)` is also a polynomial over every `L(M, f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarId {
    N(u16, u16),
    X(u16),
}

impl VarId {
    pub fn n(i: usize, k: usize) -> VarId {
        assert!(i >= 1 && i < k, "n_{i}_{k} is not strictly upper triangular");
        VarId::N(i as u16, k as u16)
    }

    pub fn x(alpha: usize) -> VarId {
        assert!(alpha >= 1, "x indices start at 1");
        VarId::X(alpha as u16)
    }

    fn sort_key(&self) -> (u8, u16, u16) {
        match *self {
            VarId::N(i, k) => (0, k - i, i),
            VarId::X(a) => (1, a, 0),
        }
    }

    pub fn is_n(&self) -> bool {
        matches!(self, VarId::N(..))
    }

    /// Label of the dual basis element, `N_i_k` or `X_a`.
    pub fn basis_label(&self) -> String {
        match *self {
            VarId::N(i, k) => format!("N_{i}_{k}"),
            VarId::X(a) => format!("X_{a}"),
        }
    }

    pub fn parse_basis_label(s: &str) -> Result<VarId, ParseError> {
        let lowered = match s.as_bytes().first() {
            Some(b'N') => format!("n{}", &s[1..]),
            Some(b'X') => format!("x{}", &s[1..]),
            _ => return Err(ParseError::new(format!("bad basis label `{s}`"), 0)),
        };
        lowered.parse()
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarId::N(i, k) => write!(f, "n_{i}_{k}"),
            VarId::X(a) => write!(f, "x_{a}"),
        }
    }
}

impl FromStr for VarId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::new(format!("bad variable `{s}`"), 0);
        let parts: Vec<&str> = s.split('_').collect();
        let num = |p: &str| p.parse::<u16>().map_err(|_| bad());
        match parts.as_slice() {
            ["n", i, k] => {
                let (i, k) = (num(i)?, num(k)?);
                if i == 0 || i >= k {
                    return Err(bad());
                }
                Ok(VarId::N(i, k))
            }
            ["x", a] => {
                let a = num(a)?;
                if a == 0 {
                    return Err(bad());
                }
                Ok(VarId::X(a))
            }
            _ => Err(bad()),
        }
    }
}

/// The ambient variable set of an algebra with nilradical `T(M)` and `f` extra elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    pub m: usize,
    pub f: usize,
}

impl Universe {
    pub fn new(m: usize, f: usize) -> Self {
        Universe { m, f }
    }

    /// `M(M-1)/2`, the dimension of the nilradical.
    pub fn r(&self) -> usize {
        self.m * self.m.saturating_sub(1) / 2
    }

    pub fn dim(&self) -> usize {
        self.r() + self.f
    }

    pub fn contains(&self, v: VarId) -> bool {
        match v {
            VarId::N(i, k) => (k as usize) <= self.m && i >= 1 && i < k,
            VarId::X(a) => a >= 1 && (a as usize) <= self.f,
        }
    }

    /// Position of `v` in the canonical order, a bijection onto `0..dim`.
    pub fn index(&self, v: VarId) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        Some(match v {
            VarId::N(i, k) => {
                let d = (k - i) as usize;
                // diagonals 1..d-1 hold M-1, M-2, ..., M-d+1 entries
                let before: usize = (1..d).map(|dd| self.m - dd).sum();
                before + i as usize - 1
            }
            VarId::X(a) => self.r() + a as usize - 1,
        })
    }

    pub fn var(&self, index: usize) -> VarId {
        assert!(index < self.dim(), "index {index} out of range");
        if index >= self.r() {
            return VarId::X((index - self.r() + 1) as u16);
        }
        let mut rest = index;
        let mut d = 1;
        while rest >= self.m - d {
            rest -= self.m - d;
            d += 1;
        }
        let i = rest + 1;
        VarId::N(i as u16, (i + d) as u16)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.dim()).map(move |idx| self.var(idx))
    }

    pub fn n_vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.r()).map(move |idx| self.var(idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_m4() {
        let u = Universe::new(4, 1);
        let order: Vec<String> = u.vars().map(|v| v.to_string()).collect();
        assert_eq!(order, ["n_1_2", "n_2_3", "n_3_4", "n_1_3", "n_2_4", "n_1_4", "x_1"]);
    }

    #[test]
    fn index_is_bijection() {
        for m in 2..12 {
            for f in 0..4 {
                let u = Universe::new(m, f);
                let mut sorted: Vec<VarId> = u.vars().collect();
                for (idx, v) in sorted.iter().enumerate() {
                    assert_eq!(u.index(*v), Some(idx));
                }
                let before = sorted.clone();
                sorted.sort();
                assert_eq!(before, sorted, "Ord must agree with canonical index");
            }
        }
    }

    #[test]
    fn out_of_range() {
        let u = Universe::new(4, 0);
        assert_eq!(u.index(VarId::n(1, 5)), None);
        assert_eq!(u.index(VarId::x(1)), None);
        assert!("n_3_2".parse::<VarId>().is_err());
        assert!("y_1".parse::<VarId>().is_err());
        assert_eq!("x_3".parse::<VarId>().unwrap(), VarId::x(3));
        assert_eq!(VarId::parse_basis_label("N_2_4").unwrap(), VarId::n(2, 4));
    }
}
