use std::cell::RefCell;
use std::collections::HashMap;

use rand::Rng;

use crate::error::{CatalogError, EvalError};
use crate::sampling::{self, Point, SampleRng};
use crate::symbolic::{InvariantExpr, Polynomial, RationalMatrix, Universe, Q};

/// Consecutive sample points with a vanishing denominator before giving up.
pub const MAX_BAD_SAMPLES: usize = 50;

fn gradient_matrix(
    invariants: &[InvariantExpr],
    u: &Universe,
    rng: &mut SampleRng,
) -> Result<RationalMatrix, EvalError> {
    let vars: Vec<_> = u.vars().collect();
    let point = Point::random(u, rng);
    // independent stand-in per log argument
    let logs: RefCell<HashMap<Polynomial, Q>> = RefCell::new(HashMap::new());
    let log_rng = RefCell::new(sampling::rng(rng.gen()));
    let log_value = |p: &Polynomial| -> Q {
        logs.borrow_mut()
            .entry(p.clone())
            .or_insert_with(|| sampling::random_int(&mut log_rng.borrow_mut(), sampling::SAMPLE_BOUND))
            .clone()
    };
    let rows = invariants
        .iter()
        .map(|e| e.gradient(&vars, &point.as_fn(), &log_value))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalMatrix::from_rows(rows))
}

/// Generic rank of the Jacobian of `invariants`: the maximum exact rank over `trials`
/// random points. Points where some denominator or log argument vanishes are resampled.
pub fn jacobian_rank(invariants: &[InvariantExpr], u: &Universe, trials: usize, seed: u64) -> Result<usize, CatalogError> {
    assert!(trials >= 1, "at least one trial is required");
    if invariants.is_empty() {
        return Ok(0);
    }
    let mut best = 0;
    for t in 0..trials {
        let mut rng = sampling::rng_stream(seed, t as u64);
        let mut bad = 0;
        loop {
            match gradient_matrix(invariants, u, &mut rng) {
                Ok(m) => {
                    best = best.max(m.rank());
                    break;
                }
                Err(EvalError::DenominatorVanishes) => {
                    bad += 1;
                    if bad >= MAX_BAD_SAMPLES {
                        return Err(CatalogError::TooManyBadSamples(bad));
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(best)
}
