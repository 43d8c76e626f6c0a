use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::field::VectorField;
use super::polynomial::Polynomial;
use super::rational::Q;
use super::var::VarId;
use crate::error::EvalError;

/// Quotient of polynomials with the denominator kept as a product of monic factors.
///
/// Every factor is nonconstant and monic; scalars live in the numerator. After each
/// operation the numerator is divided by any denominator factor it is a multiple of, so
/// the fraction is reduced relative to its factor basis. Denominators built from
/// irreducible pieces (single variables, the corner determinants) are therefore fully
/// reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFn {
    num: Polynomial,
    den: BTreeMap<Polynomial, u32>,
}

impl Default for RationalFn {
    fn default() -> Self {
        RationalFn::zero()
    }
}

/// Scalar, monomial content (as variable factors) and a monic remainder.
fn split_factors(p: &Polynomial) -> (Q, Vec<(Polynomial, u32)>) {
    let content = p.monomial_content();
    let rest = if content.is_one() { p.clone() } else { p.div_exact(&Polynomial::term(Q::one(), content.clone())).unwrap() };
    let (c, monic) = rest.monic();
    let mut factors: Vec<(Polynomial, u32)> = content.powers().iter().map(|&(v, e)| (Polynomial::var(v), e)).collect();
    if !monic.is_constant() {
        factors.push((monic, 1));
    }
    (c, factors)
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn { num: Polynomial::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        RationalFn::from(Polynomial::one())
    }

    /// `num / den`; panics when `den` is zero.
    pub fn new(num: Polynomial, den: &Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (c, factors) = split_factors(den);
        let mut out = RationalFn { num: num.scale(&c.recip()), den: BTreeMap::new() };
        for (f, e) in factors {
            *out.den.entry(f).or_insert(0) += e;
        }
        out.reduce();
        out
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(p, e)| (p, *e))
    }

    /// The expanded denominator (monic).
    pub fn denom(&self) -> Polynomial {
        self.den.iter().fold(Polynomial::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Q> {
        (self.den.is_empty() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<Polynomial> = self.den.keys().cloned().collect();
        for f in factors {
            loop {
                let e = self.den[&f];
                if e == 0 {
                    break;
                }
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        *self.den.get_mut(&f).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    /// Multiply the numerator by `prod f^(target - own)` over the factors of `target`.
    fn lift_to(&self, target: &BTreeMap<Polynomial, u32>) -> Polynomial {
        let mut num = self.num.clone();
        for (f, e) in target {
            let own = self.den.get(f).copied().unwrap_or(0);
            if *e > own {
                num = &num * &f.pow(e - own);
            }
        }
        num
    }

    fn combine(&self, other: &RationalFn, sign: &Q) -> RationalFn {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scale(sign);
        }
        let mut lcm = self.den.clone();
        for (f, e) in &other.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let num = &self.lift_to(&lcm) + &other.lift_to(&lcm).scale(sign);
        let mut out = RationalFn { num, den: lcm };
        out.reduce();
        out
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        self.combine(other, &Q::one())
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.combine(other, &-Q::one())
    }

    pub fn neg(&self) -> RationalFn {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> RationalFn {
        if c.is_zero() {
            return RationalFn::zero();
        }
        RationalFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        if self.is_zero() || other.is_zero() {
            return RationalFn::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        let mut out = RationalFn { num: &self.num * &other.num, den };
        out.reduce();
        out
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalFn {
        self.mul(&RationalFn::from(p.clone()))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<RationalFn> {
        if self.is_zero() {
            return None;
        }
        let (c, factors) = split_factors(&self.num);
        let mut den = BTreeMap::new();
        for (f, e) in factors {
            *den.entry(f).or_insert(0) += e;
        }
        let mut out = RationalFn { num: self.denom().scale(&c.recip()), den };
        out.reduce();
        Some(out)
    }

    pub fn div(&self, other: &RationalFn) -> Option<RationalFn> {
        Some(self.mul(&other.inv()?))
    }

    pub fn div_poly(&self, p: &Polynomial) -> RationalFn {
        self.mul(&RationalFn::new(Polynomial::one(), p))
    }

    /// Integer power (negative exponents invert).
    pub fn powi(&self, e: i64) -> Option<RationalFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFn::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Image under a derivation: `v(N/D) = (v(N) D' - N sum_i k_i v(d_i) D'/d_i) / (D D')`
    /// where `D' = prod d_i` over the distinct factors.
    pub fn derive(&self, v: &VectorField) -> RationalFn {
        if self.den.is_empty() {
            return RationalFn::from(v.apply_poly(&self.num));
        }
        let factors: Vec<(&Polynomial, u32)> = self.den.iter().map(|(f, e)| (f, *e)).collect();
        let radical = factors.iter().fold(Polynomial::one(), |acc, (f, _)| &acc * f);
        let mut num = &v.apply_poly(&self.num) * &radical;
        for (idx, (f, e)) in factors.iter().enumerate() {
            let df = v.apply_poly(f);
            if df.is_zero() {
                continue;
            }
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .fold(Polynomial::one(), |acc, (_, (g, _))| &acc * g);
            let term = &(&self.num * &df) * &others;
            num = &num - &term.scale(&Q::from_integer((*e).into()));
        }
        let mut den = self.den.clone();
        for (_, e) in den.iter_mut() {
            *e += 1;
        }
        let mut out = RationalFn { num, den };
        out.reduce();
        out
    }

    pub fn partial(&self, var: VarId) -> RationalFn {
        self.derive(&VectorField::partial(var))
    }

    pub fn eval(&self, point: &dyn Fn(VarId) -> Option<Q>) -> Result<Q, EvalError> {
        let mut den = Q::one();
        for (f, e) in &self.den {
            den *= num_traits::pow(f.eval(point)?, *e as usize);
        }
        if den.is_zero() {
            return Err(EvalError::DenominatorVanishes);
        }
        Ok(self.num.eval(point)? / den)
    }

    /// Value and gradient at a point, `d(N/D) = (dN - N sum_f e_f df/f) / D`, without
    /// forming the symbolic derivative.
    pub fn eval_gradient(&self, vars: &[VarId], point: &dyn Fn(VarId) -> Option<Q>) -> Result<(Q, Vec<Q>), EvalError> {
        let mut den = Q::one();
        let mut factors = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let v = f.eval(point)?;
            if v.is_zero() {
                return Err(EvalError::DenominatorVanishes);
            }
            den *= num_traits::pow(v.clone(), *e as usize);
            factors.push((f, Q::from_integer((*e).into()), v));
        }
        let num = self.num.eval(point)?;
        let mut grad = Vec::with_capacity(vars.len());
        for var in vars {
            let mut d = self.num.derivative(*var).eval(point)?;
            if !num.is_zero() {
                for (f, e, v) in &factors {
                    let df = f.derivative(*var);
                    if !df.is_zero() {
                        d -= &num * e * df.eval(point)? / v;
                    }
                }
            }
            grad.push(d / &den);
        }
        Ok((num / den, grad))
    }
}

impl From<Polynomial> for RationalFn {
    fn from(p: Polynomial) -> Self {
        RationalFn { num: p, den: BTreeMap::new() }
    }
}

impl From<Q> for RationalFn {
    fn from(c: Q) -> Self {
        RationalFn::from(Polynomial::constant(c))
    }
}

fn needs_parens(p: &Polynomial) -> bool {
    p.num_terms() > 1 || p.leading_coefficient() < Q::zero()
}

fn write_factor(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    if p.num_terms() > 1 || !p.leading_term().map_or(true, |(_, c)| c.is_one()) {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

/// `num` alone for polynomials, otherwise `(num)/(d1^e1*d2^e2...)`.
impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        let single = self.den.len() == 1 && self.den.values().all(|e| *e == 1);
        if !single {
            write!(f, "(")?;
        }
        for (idx, (p, e)) in self.den.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write_factor(f, p)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if !single {
            write!(f, ")")?;
        }
        Ok(())
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
    fn reduction_cancels_factors() {
        let z2 = &n(1, 3) * &n(2, 4) - &n(2, 3) * &n(1, 4);
        let r = RationalFn::new(&z2 * &n(1, 4), &(&z2.scale(&q(2)) * &n(1, 4)));
        assert_eq!(r.constant_value(), Some(q(1) / q(2)));
    }

    #[test]
    fn add_and_sub_to_zero() {
        let a = RationalFn::new(n(1, 2), &n(1, 4));
        let b = RationalFn::new(n(2, 3), &n(1, 4).pow(2));
        let s = a.add(&b);
        assert!(s.sub(&a).sub(&b).is_zero());
        assert_eq!(s.denom(), n(1, 4).pow(2));
    }

    #[test]
    fn quotient_rule() {
        // d/dn14 (n12 / n14^2) = -2 n12 / n14^3
        let r = RationalFn::new(n(1, 2), &n(1, 4).pow(2));
        let d = r.partial(VarId::n(1, 4));
        let expected = RationalFn::new(n(1, 2).scale(&q(-2)), &n(1, 4).pow(3));
        assert_eq!(d, expected);
    }

    #[test]
    fn inverse_and_eval() {
        let r = RationalFn::new(n(1, 2).scale(&q(3)), &(&n(1, 4) + &n(1, 3)));
        let inv = r.inv().unwrap();
        assert!(r.mul(&inv).sub(&RationalFn::one()).is_zero());
        let at_zero = RationalFn::new(Polynomial::one(), &n(1, 4));
        assert_eq!(at_zero.eval(&|_| Some(q(0))), Err(EvalError::DenominatorVanishes));
    }
}
