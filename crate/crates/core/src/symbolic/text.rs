//! Parser for the text form of polynomials and invariant expressions.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := unary (('*'|'/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := int | '-' int | '(' ['-'] int ['/' int] ')'
//! atom     := int | n_i_k | x_a | 'ln' '(' expr ')' | '(' expr ')'
//! ```
//!
//! A parenthesised base with a parenthesised exponent, `(p)^(e)`, is kept as a formal
//! power factor; every other power is evaluated in the rational function field.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expr::{integral, InvariantExpr};
use super::polynomial::Polynomial;
use super::rational::Q;
use super::ratfn::RationalFn;
use super::var::VarId;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(s[start..i].parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError::new(format!("unexpected character `{c}`"), i));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(msg, self.offset()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<InvariantExpr, ParseError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<InvariantExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let at = self.offset();
                let rhs = self.unary()?;
                acc = acc.mul(&rhs).ok_or_else(|| ParseError::new("unsupported product with a logarithm", at))?;
            } else if self.eat('/') {
                let at = self.offset();
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(ParseError::new("division by zero", at));
                }
                acc = acc.div(&rhs).ok_or_else(|| ParseError::new("unsupported division", at))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<InvariantExpr, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected integer"),
        }
    }

    /// Returns the exponent and whether it was written in parentheses.
    fn exponent(&mut self) -> Result<(Q, bool), ParseError> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.int()?;
            let d = if self.eat('/') { self.int()? } else { BigInt::one() };
            if d.is_zero() {
                return self.err("zero denominator in exponent");
            }
            self.expect(')')?;
            let e = Q::new(n, d);
            return Ok((if neg { -e } else { e }, true));
        }
        let neg = self.eat('-');
        let n = Q::from_integer(self.int()?);
        Ok((if neg { -n } else { n }, false))
    }

    fn power(&mut self) -> Result<InvariantExpr, ParseError> {
        let parenthesised = self.peek() == Some(&Tok::Sym('('));
        let at = self.offset();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let (e, formal) = self.exponent()?;
        if parenthesised && formal {
            if let Some(p) = base.as_polynomial() {
                if p.is_zero() {
                    return Err(ParseError::new("power of zero", at));
                }
                return Ok(InvariantExpr::power_product(vec![(p, e)]));
            }
        }
        let k = integral(&e).ok_or_else(|| ParseError::new("fractional power of a non-polynomial", at))?;
        let r = base.as_rational().ok_or_else(|| ParseError::new("power of a transcendental term", at))?;
        let r = r.powi(k).ok_or_else(|| ParseError::new("negative power of zero", at))?;
        Ok(InvariantExpr::from(r))
    }

    fn atom(&mut self) -> Result<InvariantExpr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(InvariantExpr::constant(Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) if name == "ln" => {
                self.pos += 1;
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                log_of(&inner).ok_or_else(|| ParseError::new("logarithm argument must be a nonzero rational function", at))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let v: VarId = name.parse().map_err(|e: ParseError| ParseError::new(e.message, at))?;
                Ok(InvariantExpr::from(Polynomial::var(v)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// `ln(num/den) = ln(num) - sum e_i ln(d_i)`.
fn log_of(e: &InvariantExpr) -> Option<InvariantExpr> {
    let r: &RationalFn = e.as_rational()?;
    if r.is_zero() {
        return None;
    }
    let mut out = InvariantExpr::ln(r.numer().clone());
    for (d, k) in r.denom_factors() {
        out = out.sub(&InvariantExpr::ln(d.clone()).scale(&Q::from_integer(k.into())));
    }
    Some(out)
}

pub fn parse_expr(s: &str) -> Result<InvariantExpr, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParseError::new("empty expression", 0));
    }
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::q;

    #[test]
    fn parses_polynomial_text() {
        let p: Polynomial = "-n_2_3*n_1_4 + n_1_3*n_2_4".parse().unwrap();
        assert_eq!(p.num_terms(), 2);
        let p: Polynomial = "3/4*n_1_2^2 - 2".parse().unwrap();
        assert_eq!(p.constant_term(), q(-2));
        assert_eq!(p.to_string(), "3/4*n_1_2^2 - 2");
    }

    #[test]
    fn parses_logs_and_powers() {
        let e: InvariantExpr = "2*(n_1_3*n_2_4 - n_2_3*n_1_4)/n_1_4^2 - ln(n_1_4)".parse().unwrap();
        assert_eq!(e.log_terms.len(), 1);
        let again: InvariantExpr = e.to_string().parse().unwrap();
        assert!(again.sub(&e).is_zero());
        let pp: InvariantExpr = "(n_1_3*n_2_4 - n_2_3*n_1_4)^(3)*(n_1_4)^(-4)".parse().unwrap();
        assert_eq!(pp.power_terms.len(), 1);
        assert_eq!(pp.power_terms[0].factors.len(), 2);
        let again: InvariantExpr = pp.to_string().parse().unwrap();
        assert_eq!(again, pp);
    }

    #[test]
    fn reports_positions() {
        let err = "n_1_2 + $".parse::<InvariantExpr>().unwrap_err();
        assert_eq!(err.position, 8);
        assert!("n_1_2 +".parse::<InvariantExpr>().is_err());
        assert!("ln(n_1_2)*ln(n_1_3)".parse::<InvariantExpr>().is_err());
        assert!("n_2_1".parse::<InvariantExpr>().is_err());
        assert!("1/(n_1_2 - n_1_2)".parse::<InvariantExpr>().is_err());
    }
}
