use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_q, Q};
use super::var::VarId;
use crate::error::{EvalError, ParseError};

/// A power product of variables, sorted by variable, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(mut powers: Vec<(VarId, u32)>) -> Self {
        powers.retain(|(_, e)| *e > 0);
        powers.sort_by_key(|(v, _)| *v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn powers(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then(|| (v, e.min(f)))
                })
                .collect(),
        )
    }

    fn without(&self, v: VarId) -> (u32, Monomial) {
        let e = self.exponent(v);
        (e, Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect()))
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the earliest variable.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (va, vb) = (a.get(i).map(|t| t.0), b.get(j).map(|t| t.0));
            let ord = match (va, vb) {
                (Some(x), Some(y)) => x.cmp(&y),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                // `a` has an earlier variable that `b` lacks
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    match a[i].1.cmp(&b[j].1) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored. Terms are kept in graded lex order, so equality,
/// hashing and the text form are canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Polynomial::term(Q::one(), Monomial::var(v))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Q {
        self.leading_term().map_or_else(Q::zero, |(_, c)| c.clone())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.powers().iter().map(|(v, _)| *v)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &Polynomial, scale: &Q, shift: &Monomial) {
        for (m, c) in &other.terms {
            self.add_term(m.mul(shift), c * scale);
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: VarId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            if e == 0 {
                continue;
            }
            let mut powers = rest.0;
            if e > 1 {
                powers.push((v, e - 1));
            }
            out.add_term(Monomial::from_powers(powers), c * Q::from_integer(e.into()));
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if divisor.is_monomial() {
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                out.insert(m.div(lm)?, c / lc);
            }
            return Some(Polynomial { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let shift = m.div(lm)?;
            let factor = c / lc;
            quot.add_term(shift.clone(), factor.clone());
            rem.add_scaled(divisor, &-factor, &shift);
        }
        Some(quot)
    }

    /// Splits off the leading coefficient: `self = c * monic`.
    pub fn monic(&self) -> (Q, Polynomial) {
        let lc = self.leading_coefficient();
        if lc.is_zero() {
            return (Q::zero(), Polynomial::zero());
        }
        (lc.clone(), self.scale(&lc.recip()))
    }

    /// Largest monomial dividing every term.
    /// Exact division by a monomial, `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        if m.is_one() {
            return Some(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            terms.insert(t.div(m)?, c.clone());
        }
        Some(Polynomial { terms })
    }

    /// Product with a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        if m.is_one() {
            return self.clone();
        }
        Polynomial { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn eval(&self, point: &dyn Fn(VarId) -> Option<Q>) -> Result<Q, EvalError> {
        let mut cache: HashMap<VarId, Q> = HashMap::new();
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                let val = match cache.get(v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = point(*v).ok_or_else(|| EvalError::MissingVariable(v.to_string()))?;
                        cache.insert(*v, x.clone());
                        x
                    }
                };
                t *= num_traits::pow(val, *e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn eval_map(&self, point: &HashMap<VarId, Q>) -> Result<Q, EvalError> {
        self.eval(&|v| point.get(&v).cloned())
    }

    /// Replace each variable by a polynomial (variables missing from `map` stay put).
    pub fn substitute(&self, map: &dyn Fn(VarId) -> Option<Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (v, e) in m.powers() {
                let base = map(*v).unwrap_or_else(|| Polynomial::var(*v));
                t = &t * &base.pow(*e);
            }
            out = &out + &t;
        }
        out
    }
}

impl From<VarId> for Polynomial {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

impl From<Q> for Polynomial {
    fn from(c: Q) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(super::rational::q(c))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Canonical text form: terms in descending graded lex order, e.g.
/// `-n_2_3*n_1_4 + n_1_3*n_2_4`. Unit coefficients are omitted.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let expr = super::text::parse_expr(s)?;
        expr.as_polynomial()
            .ok_or_else(|| ParseError::new(format!("`{s}` is not a polynomial"), 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::q;

    fn n(i: usize, k: usize) -> Polynomial {
        Polynomial::var(VarId::n(i, k))
    }

    #[test]
    fn additive_inverse() {
        assert!((&n(1, 2) + &-n(1, 2)).is_zero());
    }

    #[test]
    fn z2_of_t4() {
        let z2 = &n(1, 3) * &n(2, 4) - &n(2, 3) * &n(1, 4);
        assert_eq!(z2.num_terms(), 2);
        assert_eq!(z2.to_string(), "-n_2_3*n_1_4 + n_1_3*n_2_4");
        assert!(z2.is_homogeneous());
    }

    #[test]
    fn binomial_square() {
        let s = &n(1, 2) + &n(1, 3);
        let sq = &s * &s;
        let expected = &(&n(1, 2) * &n(1, 2)) + &(&(&n(1, 2) * &n(1, 3)).scale(&q(2)) + &(&n(1, 3) * &n(1, 3)));
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "n_1_2^2 + 2*n_1_2*n_1_3 + n_1_3^2");
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::var(VarId::n(1, 2));
        let b = Monomial::var(VarId::n(1, 4));
        assert!(a > b, "earlier variable ranks higher");
        let c = Monomial::from_powers(vec![(VarId::n(1, 4), 2)]);
        assert!(c > a, "degree dominates");
    }

    #[test]
    fn exact_division() {
        let a = &n(1, 2) + &n(2, 3);
        let b = &n(1, 4) - &Polynomial::from(3);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
        assert_eq!(prod.div_exact(&n(1, 2)), None);
        assert_eq!((&n(1, 2) * &n(1, 4)).div_exact(&n(1, 4)), Some(n(1, 2)));
    }

    #[test]
    fn derivative_and_eval() {
        let p = &(&n(1, 2) * &n(1, 2)) * &n(2, 3);
        assert_eq!(p.derivative(VarId::n(1, 2)), (&n(1, 2) * &n(2, 3)).scale(&q(2)));
        let val = p.eval(&|v| Some(if v == VarId::n(1, 2) { q(3) } else { q(-2) })).unwrap();
        assert_eq!(val, q(-18));
        assert_eq!((&p + &Polynomial::from(5)).eval(&|_| Some(q(0))).unwrap(), q(5));
        assert!(p.eval(&|_| None).is_err());
    }
}
