//! Exact rational helpers shared by the rest of the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` text form; integers are printed without a denominator.
pub fn fmt_q(value: &Q) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new(format!("bad rational `{s}`"), 0);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseError::new("zero denominator", 0));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Scale a vector of rationals to coprime integers with the first nonzero entry positive.
/// Returns `None` for the zero vector.
pub fn clear_to_coprime_integers(values: &[Q]) -> Option<Vec<BigInt>> {
    let first = values.iter().find(|v| !v.is_zero())?;
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = values.iter().map(|v| (v * Q::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    for v in ints.iter_mut() {
        *v = &*v / &gcd * &sign;
    }
    Some(ints)
}
