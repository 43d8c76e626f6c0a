use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::VectorField;
use super::polynomial::Polynomial;
use super::rational::{fmt_q, Q};
use super::ratfn::RationalFn;
use super::var::VarId;
use crate::error::{EvalError, ParseError};

/// `coeff * prod p_i^(e_i)` with formal rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerTerm {
    pub coeff: RationalFn,
    pub factors: Vec<(Polynomial, Q)>,
}

/// `coeff * ln(arg)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogTerm {
    pub coeff: RationalFn,
    pub arg: Polynomial,
}

/// Closed-form invariant: a rational function plus formal power products and logarithms.
///
/// The value is `base + sum(power_terms) + sum(log_terms)`. Logarithms and power products
/// with non-integer exponents are treated as symbols transcendental over the rational
/// function field; a derivation acts on them through `v(p^e) = e p^(e-1) v(p)` and
/// `v(ln q) = v(q)/q`. Zero-testing compares coefficients symbol by symbol, which is exact
/// as long as distinct log arguments are multiplicatively independent (see
/// [`InvariantExpr::shared_log_factors`]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InvariantExpr {
    pub base: RationalFn,
    pub power_terms: Vec<PowerTerm>,
    pub log_terms: Vec<LogTerm>,
}

impl InvariantExpr {
    pub fn zero() -> Self {
        InvariantExpr::default()
    }

    pub fn constant(c: Q) -> Self {
        InvariantExpr::from(RationalFn::from(c))
    }

    /// `prod p_i^(e_i)` kept in formal form (no folding of integer exponents).
    pub fn power_product(factors: Vec<(Polynomial, Q)>) -> Self {
        let factors: Vec<(Polynomial, Q)> = factors.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        if factors.is_empty() {
            return InvariantExpr::constant(Q::one());
        }
        InvariantExpr { power_terms: vec![PowerTerm { coeff: RationalFn::one(), factors }], ..Default::default() }
    }

    pub fn ln(arg: Polynomial) -> Self {
        assert!(!arg.is_zero(), "logarithm of zero");
        InvariantExpr { log_terms: vec![LogTerm { coeff: RationalFn::one(), arg }], ..Default::default() }
    }

    pub fn is_rational(&self) -> bool {
        self.power_terms.is_empty() && self.log_terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&RationalFn> {
        self.is_rational().then_some(&self.base)
    }

    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.as_rational()?.as_polynomial().cloned()
    }

    pub fn add(&self, other: &InvariantExpr) -> InvariantExpr {
        InvariantExpr {
            base: self.base.add(&other.base),
            power_terms: self.power_terms.iter().chain(&other.power_terms).cloned().collect(),
            log_terms: self.log_terms.iter().chain(&other.log_terms).cloned().collect(),
        }
        .tidy()
    }

    pub fn neg(&self) -> InvariantExpr {
        self.mul_rational(&RationalFn::from(-Q::one()))
    }

    pub fn sub(&self, other: &InvariantExpr) -> InvariantExpr {
        self.add(&other.neg())
    }

    pub fn mul_rational(&self, r: &RationalFn) -> InvariantExpr {
        InvariantExpr {
            base: self.base.mul(r),
            power_terms: self
                .power_terms
                .iter()
                .map(|t| PowerTerm { coeff: t.coeff.mul(r), factors: t.factors.clone() })
                .collect(),
            log_terms: self.log_terms.iter().map(|t| LogTerm { coeff: t.coeff.mul(r), arg: t.arg.clone() }).collect(),
        }
        .tidy()
    }

    pub fn scale(&self, c: &Q) -> InvariantExpr {
        self.mul_rational(&RationalFn::from(c.clone()))
    }

    /// Product; `None` when it would multiply a logarithm by a non-rational factor.
    pub fn mul(&self, other: &InvariantExpr) -> Option<InvariantExpr> {
        if let Some(r) = other.as_rational() {
            return Some(self.mul_rational(r));
        }
        if let Some(r) = self.as_rational() {
            return Some(other.mul_rational(r));
        }
        if !self.log_terms.is_empty() || !other.log_terms.is_empty() {
            return None;
        }
        let pieces = |e: &InvariantExpr| -> Vec<PowerTerm> {
            let mut v = e.power_terms.clone();
            if !e.base.is_zero() {
                v.push(PowerTerm { coeff: e.base.clone(), factors: Vec::new() });
            }
            v
        };
        let mut out = InvariantExpr::zero();
        for a in pieces(self) {
            for b in pieces(other) {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                out.power_terms.push(PowerTerm { coeff: a.coeff.mul(&b.coeff), factors });
            }
        }
        Some(out.tidy())
    }

    /// Multiplicative inverse of a rational function or a single power term.
    pub fn inv(&self) -> Option<InvariantExpr> {
        if let Some(r) = self.as_rational() {
            return Some(InvariantExpr::from(r.inv()?));
        }
        if self.base.is_zero() && self.log_terms.is_empty() && self.power_terms.len() == 1 {
            let t = &self.power_terms[0];
            return Some(InvariantExpr {
                power_terms: vec![PowerTerm {
                    coeff: t.coeff.inv()?,
                    factors: t.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
                }],
                ..Default::default()
            });
        }
        None
    }

    pub fn div(&self, other: &InvariantExpr) -> Option<InvariantExpr> {
        self.mul(&other.inv()?)
    }

    /// Drops zero pieces; keeps the written form of power products.
    fn tidy(mut self) -> InvariantExpr {
        self.power_terms.retain(|t| !t.coeff.is_zero());
        for t in self.power_terms.iter_mut() {
            t.factors.retain(|(_, e)| !e.is_zero());
        }
        let (plain, rest): (Vec<PowerTerm>, Vec<PowerTerm>) =
            std::mem::take(&mut self.power_terms).into_iter().partition(|t| t.factors.is_empty());
        for t in plain {
            self.base = self.base.add(&t.coeff);
        }
        self.power_terms = rest;
        let mut logs: BTreeMap<Polynomial, RationalFn> = BTreeMap::new();
        for t in std::mem::take(&mut self.log_terms) {
            let slot = logs.entry(t.arg).or_default();
            *slot = slot.add(&t.coeff);
        }
        self.log_terms =
            logs.into_iter().filter(|(_, c)| !c.is_zero()).map(|(arg, coeff)| LogTerm { coeff, arg }).collect();
        self
    }

    /// Canonical form for comparisons: integer parts of exponents are folded into the
    /// coefficient, repeated bases are merged, power terms with equal factor lists are added.
    pub fn normalized(&self) -> InvariantExpr {
        let mut base = self.base.clone();
        let mut grouped: BTreeMap<Vec<(Polynomial, Q)>, RationalFn> = BTreeMap::new();
        for t in &self.power_terms {
            let mut merged: BTreeMap<Polynomial, Q> = BTreeMap::new();
            for (p, e) in &t.factors {
                *merged.entry(p.clone()).or_insert_with(Q::zero) += e;
            }
            let mut coeff = t.coeff.clone();
            let mut fractional = Vec::new();
            for (p, e) in merged {
                let whole = e.floor();
                let frac = &e - &whole;
                let shift = whole.to_integer();
                let shift: i64 = i64::try_from(shift).expect("exponent out of range");
                if shift != 0 {
                    let pw = RationalFn::from(p.clone()).powi(shift).expect("zero base");
                    coeff = coeff.mul(&pw);
                }
                if !frac.is_zero() {
                    fractional.push((p, frac));
                }
            }
            if fractional.is_empty() {
                base = base.add(&coeff);
            } else {
                let slot = grouped.entry(fractional).or_default();
                *slot = slot.add(&coeff);
            }
        }
        InvariantExpr {
            base,
            power_terms: grouped
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(factors, coeff)| PowerTerm { coeff, factors })
                .collect(),
            log_terms: self.log_terms.clone(),
        }
        .tidy()
    }

    /// Exact zero test, coefficient-wise over the formal symbols.
    pub fn is_zero(&self) -> bool {
        let n = self.normalized();
        n.base.is_zero() && n.power_terms.is_empty() && n.log_terms.is_empty()
    }

    /// Image under the derivation `v`.
    pub fn derive(&self, v: &VectorField) -> InvariantExpr {
        let mut out = InvariantExpr { base: self.base.derive(v), ..Default::default() };
        for t in &self.power_terms {
            let mut coeff = t.coeff.derive(v);
            for (p, e) in &t.factors {
                let dp = v.apply_poly(p);
                if dp.is_zero() {
                    continue;
                }
                let log_derivative = RationalFn::new(dp, p).scale(e);
                coeff = coeff.add(&t.coeff.mul(&log_derivative));
            }
            out.power_terms.push(PowerTerm { coeff, factors: t.factors.clone() });
        }
        for t in &self.log_terms {
            out.log_terms.push(LogTerm { coeff: t.coeff.derive(v), arg: t.arg.clone() });
            let dq = v.apply_poly(&t.arg);
            if !dq.is_zero() {
                out.base = out.base.add(&t.coeff.mul(&RationalFn::new(dq, &t.arg)));
            }
        }
        out.tidy()
    }

    pub fn partial(&self, var: VarId) -> InvariantExpr {
        self.derive(&VectorField::partial(var))
    }

    /// Exact value at a point. Only rational expressions (after folding integer exponents)
    /// are evaluated; logarithms and fractional powers are never approximated.
    pub fn eval(&self, point: &dyn Fn(VarId) -> Option<Q>) -> Result<Q, EvalError> {
        let n = self.normalized();
        if !n.is_rational() {
            return Err(EvalError::NotRational(self.to_string()));
        }
        n.base.eval(point)
    }

    /// One row of the Jacobian at `point`.
    ///
    /// Logarithm values enter through `log_value` (the caller substitutes independent
    /// stand-ins, which keeps the rank a valid lower bound). A lone power product
    /// `c * P` is differentiated through its logarithmic derivative and the common
    /// nonzero factor `P` is dropped, which rescales the row without changing rank.
    pub fn gradient(
        &self,
        vars: &[VarId],
        point: &dyn Fn(VarId) -> Option<Q>,
        log_value: &dyn Fn(&Polynomial) -> Q,
    ) -> Result<Vec<Q>, EvalError> {
        if let Some(row) = self.log_gradient(vars, point)? {
            return Ok(row);
        }
        let n = self.normalized();
        if !n.power_terms.is_empty() {
            return Err(EvalError::UnsupportedGradient(format!(
                "power products mixed with other terms in `{self}`"
            )));
        }
        let (_, mut row) = n.base.eval_gradient(vars, point)?;
        for t in &n.log_terms {
            let (c, dc) = t.coeff.eval_gradient(vars, point)?;
            let (a, da) = RationalFn::from(t.arg.clone()).eval_gradient(vars, point)?;
            if a.is_zero() {
                return Err(EvalError::DenominatorVanishes);
            }
            let l = log_value(&t.arg);
            for ((slot, dc), da) in row.iter_mut().zip(dc).zip(da) {
                *slot += dc * &l + &c * da / &a;
            }
        }
        Ok(row)
    }

    /// `sum_i e_i grad(p_i) / p_i` for a lone constant multiple of `prod p_i^(e_i)`, kept
    /// unfolded so large integer exponents never get expanded.
    fn log_gradient(&self, vars: &[VarId], point: &dyn Fn(VarId) -> Option<Q>) -> Result<Option<Vec<Q>>, EvalError> {
        if !self.base.is_zero() || !self.log_terms.is_empty() || self.power_terms.len() != 1 {
            return Ok(None);
        }
        let t = &self.power_terms[0];
        if t.coeff.constant_value().is_none_or(|c| c.is_zero()) {
            return Ok(None);
        }
        let mut row = vec![Q::zero(); vars.len()];
        for (p, e) in &t.factors {
            let value = p.eval(point)?;
            if value.is_zero() {
                return Err(EvalError::DenominatorVanishes);
            }
            for (slot, v) in row.iter_mut().zip(vars) {
                let d = p.derivative(*v);
                if !d.is_zero() {
                    *slot += e * d.eval(point)? / &value;
                }
            }
        }
        Ok(Some(row))
    }

    pub fn variables(&self) -> std::collections::BTreeSet<VarId> {
        let mut out = self.base.numer().vars();
        let mut add_r = |r: &RationalFn| {
            out.extend(r.numer().vars());
            out.extend(r.denom().vars());
        };
        add_r(&self.base);
        for t in &self.power_terms {
            add_r(&t.coeff);
        }
        for t in &self.log_terms {
            add_r(&t.coeff);
        }
        for t in &self.power_terms {
            for (p, _) in &t.factors {
                out.extend(p.vars());
            }
        }
        for t in &self.log_terms {
            out.extend(t.arg.vars());
        }
        out
    }

    /// Pairs of log arguments that share a nonconstant common factor.
    ///
    /// Detected by restricting both arguments to random lines and taking univariate gcds;
    /// a shared factor always survives restriction, so only false positives are possible
    /// and two independent lines are required to agree.
    pub fn shared_log_factors(&self) -> Vec<(Polynomial, Polynomial)> {
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for (i, a) in self.log_terms.iter().enumerate() {
            for b in &self.log_terms[i + 1..] {
                let shared = (0..2).all(|_| {
                    let line: u64 = rng.gen();
                    let (pa, pb) = (restrict_to_line(&a.arg, line), restrict_to_line(&b.arg, line));
                    univariate_gcd_degree(pa, pb) > 0
                });
                if shared {
                    out.push((a.arg.clone(), b.arg.clone()));
                }
            }
        }
        out
    }
}

/// Substitutes `v = a_v + b_v t`, with `(a_v, b_v)` drawn from the line seed and `v`.
fn restrict_to_line(p: &Polynomial, line: u64) -> Vec<Q> {
    let mut table: BTreeMap<VarId, (Q, Q)> = BTreeMap::new();
    for v in p.vars() {
        let mut r = ChaCha8Rng::seed_from_u64(line ^ hash_var(v));
        let a = Q::from_integer(r.gen_range(-1000i64..=1000).into());
        let b = Q::from_integer(r.gen_range(1i64..=1000).into());
        table.insert(v, (a, b));
    }
    let mut acc: Vec<Q> = vec![];
    for (m, c) in p.terms() {
        let mut t = vec![c.clone()];
        for (v, e) in m.powers() {
            let (a, b) = &table[v];
            for _ in 0..*e {
                t = upoly_mul(&t, &[a.clone(), b.clone()]);
            }
        }
        acc = upoly_add(&acc, &t);
    }
    acc
}

fn hash_var(v: VarId) -> u64 {
    match v {
        VarId::N(i, k) => ((i as u64) << 20) | ((k as u64) << 4) | 1,
        VarId::X(a) => ((a as u64) << 4) | 2,
    }
}

fn upoly_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn upoly_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect();
    upoly_trim(out)
}

fn upoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    upoly_trim(out)
}

fn upoly_rem(a: Vec<Q>, b: &[Q]) -> Vec<Q> {
    let mut r = a;
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &factor * c;
        }
        r = upoly_trim(r);
    }
    r
}

fn univariate_gcd_degree(a: Vec<Q>, b: Vec<Q>) -> usize {
    let (mut a, mut b) = (upoly_trim(a), upoly_trim(b));
    while !b.is_empty() {
        let r = upoly_rem(a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

impl From<RationalFn> for InvariantExpr {
    fn from(r: RationalFn) -> Self {
        InvariantExpr { base: r, ..Default::default() }
    }
}

impl From<Polynomial> for InvariantExpr {
    fn from(p: Polynomial) -> Self {
        InvariantExpr::from(RationalFn::from(p))
    }
}

fn coeff_prefix(c: &RationalFn) -> String {
    if let Some(v) = c.constant_value() {
        if v.is_one() {
            return String::new();
        }
        if v == -Q::one() {
            return "-".into();
        }
        return format!("{}*", fmt_q(&v));
    }
    match c.as_polynomial() {
        Some(p) if p.num_terms() == 1 => format!("{p}*"),
        _ => format!("({c})*"),
    }
}

fn fmt_exponent(e: &Q) -> String {
    format!("({})", fmt_q(e))
}

/// Text form: pieces joined by `+`/`-`; power factors print as `(p)^(e)` and logs as `ln(q)`.
impl fmt::Display for InvariantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        if !self.base.is_zero() {
            pieces.push(self.base.to_string());
        }
        for t in &self.power_terms {
            let body: Vec<String> = t.factors.iter().map(|(p, e)| format!("({p})^{}", fmt_exponent(e))).collect();
            pieces.push(format!("{}{}", coeff_prefix(&t.coeff), body.join("*")));
        }
        for t in &self.log_terms {
            pieces.push(format!("{}ln({})", coeff_prefix(&t.coeff), t.arg));
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        for (idx, p) in pieces.iter().enumerate() {
            match (idx, p.strip_prefix('-')) {
                (0, _) => write!(f, "{p}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {p}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for InvariantExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::text::parse_expr(s)
    }
}

/// Integer exponent if `e` is integral.
pub(crate) fn integral(e: &Q) -> Option<i64> {
    if e.is_integer() {
        i64::try_from(e.to_integer()).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{q, q_frac};

    fn n(i: usize, k: usize) -> Polynomial {
        Polynomial::var(VarId::n(i, k))
    }

    fn z2() -> Polynomial {
        &n(1, 3) * &n(2, 4) - &n(2, 3) * &n(1, 4)
    }

    #[test]
    fn zero_tests() {
        assert!(InvariantExpr::zero().is_zero());
        assert!(InvariantExpr::from(&n(1, 2) - &n(1, 2)).is_zero());
        assert!(!InvariantExpr::ln(n(1, 4)).is_zero());
    }

    #[test]
    fn integer_power_products_fold() {
        let pp = InvariantExpr::power_product(vec![(z2(), q(1)), (n(1, 4), q(-2))]);
        let r = InvariantExpr::from(RationalFn::new(z2(), &n(1, 4).pow(2)));
        assert!(pp.sub(&r).is_zero());
    }

    #[test]
    fn derivation_of_power_and_log() {
        // d/dn14 (n14^(1/2)) = 1/2 n14^(-1/2)
        let e = InvariantExpr::power_product(vec![(n(1, 4), q_frac(1, 2))]);
        let d = e.partial(VarId::n(1, 4));
        let expected = InvariantExpr::power_product(vec![(n(1, 4), q_frac(-1, 2))]).scale(&q_frac(1, 2));
        assert!(d.sub(&expected).is_zero());
        // d/dn14 ln(n14) = 1/n14
        let l = InvariantExpr::ln(n(1, 4)).partial(VarId::n(1, 4));
        assert_eq!(l.as_rational().unwrap(), &RationalFn::new(Polynomial::one(), &n(1, 4)));
    }

    #[test]
    fn eval_refuses_logs() {
        let e = InvariantExpr::ln(n(1, 4));
        assert!(matches!(e.eval(&|_| Some(q(2))), Err(EvalError::NotRational(_))));
        let r = InvariantExpr::from(RationalFn::new(Polynomial::one(), &n(1, 4)));
        assert_eq!(r.eval(&|_| Some(q(0))), Err(EvalError::DenominatorVanishes));
    }

    #[test]
    fn shared_factor_flag() {
        let p = &n(1, 2) + &n(2, 3);
        let e = InvariantExpr::ln(&p * &n(1, 4)).add(&InvariantExpr::ln(p.clone()));
        assert_eq!(e.shared_log_factors().len(), 1);
        let e = InvariantExpr::ln(z2()).add(&InvariantExpr::ln(n(1, 4)));
        assert!(e.shared_log_factors().is_empty());
    }
}
