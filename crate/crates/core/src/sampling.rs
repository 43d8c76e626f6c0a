//! Seeded random sample points for rank and independence checks.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symbolic::{Monomial, Polynomial, Q, Universe, VarId};

/// Coordinates of random sample points are integers in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1_000_000;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from one user seed.
pub fn rng_stream(seed: u64, stream: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn random_int(rng: &mut SampleRng, bound: i64) -> Q {
    Q::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Random nonzero rational `p/q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn random_nonzero_rational(rng: &mut SampleRng, bound: i64) -> Q {
    loop {
        let p = rng.gen_range(-bound..=bound);
        if p != 0 {
            let d = rng.gen_range(1..=bound);
            return Q::new(BigInt::from(p), BigInt::from(d));
        }
    }
}

/// An exact point assigning every variable of a universe.
#[derive(Clone, Debug)]
pub struct Point {
    values: HashMap<VarId, Q>,
}

impl Point {
    pub fn random(u: &Universe, rng: &mut SampleRng) -> Self {
        Point { values: u.vars().map(|v| (v, random_int(rng, SAMPLE_BOUND))).collect() }
    }

    pub fn from_map(values: HashMap<VarId, Q>) -> Self {
        Point { values }
    }

    pub fn get(&self, v: VarId) -> Option<Q> {
        self.values.get(&v).cloned()
    }

    pub fn as_fn(&self) -> impl Fn(VarId) -> Option<Q> + '_ {
        move |v| self.get(v)
    }
}

/// Random polynomial over `vars` with at most `terms` terms of degree at most `degree` and
/// integer coefficients in `[-bound, bound]`.
pub fn random_polynomial(rng: &mut SampleRng, vars: &[VarId], terms: usize, degree: u32, bound: i64) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(0..=terms) {
        let mut powers = Vec::new();
        for _ in 0..rng.gen_range(0..=degree) {
            powers.push((vars[rng.gen_range(0..vars.len())], 1));
        }
        p.add_term(Monomial::from_powers(powers), random_int(rng, bound));
    }
    p
}
