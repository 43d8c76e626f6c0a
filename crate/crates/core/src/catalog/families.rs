use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::determinants::{theorem1_basis, w_sum, z};
use super::zhat::corner_weight;
use crate::algebra::{build_l, build_l_full_rank, build_t, CharMatrixSpec, LieAlgebra};
use crate::error::CatalogError;
use crate::sampling::{random_nonzero_rational, SampleRng};
use crate::symbolic::rational::{clear_to_coprime_integers, fmt_q, q};
use crate::symbolic::{InvariantExpr, Polynomial, RationalFn, Q, VarId};

/// Named exact parameters of a family, e.g. `a12`, `lambda2`, `sigma12`.
pub type Params = BTreeMap<String, Q>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `T(M)` with the corner determinants.
    Nilpotent,
    /// `L(4,1)` with `a14 = a23 = lambda2 = 0`: three invariants.
    L41Case1,
    /// `L(4,1)` with `lambda2 = 0`: one power-product invariant.
    L41Case2,
    /// `L(4,1)` with `a12 + a34 = 0`, `lambda2 != 0`: one logarithmic invariant.
    L41Case3,
    /// `L(4,2)` with `lambda2 != 0`.
    L42Case1,
    /// `L(4,2)` diagonal, `b34` free.
    L42Case2a,
    /// `L(4,2)` diagonal, `a12 = b34 = 1`.
    L42Case2b,
    /// `L(4,2)` with `a14 = b14 = 0`, `sigma12` free.
    L42Case3,
    /// `L(4,3)`.
    L43,
    /// `L(M, M-1)`.
    FullRank,
    /// Diagonal `L(M,1)` with `a_{i(i+1)} + a_{(M-i)(M-i+1)} = 0`.
    DiagonalCase1,
    /// Diagonal `L(M,1)` otherwise.
    DiagonalCase2,
}

const L41_PARAMS: &[&str] = &["a12", "a23", "a34", "lambda1", "lambda2", "lambda3"];
const L42_PARAMS: &[&str] =
    &["a12", "a23", "a34", "b12", "b23", "b34", "lambda1", "lambda2", "lambda3", "sigma12"];

impl Family {
    pub const LEMMAS: [Family; 8] = [
        Family::L41Case1,
        Family::L41Case2,
        Family::L41Case3,
        Family::L42Case1,
        Family::L42Case2a,
        Family::L42Case2b,
        Family::L42Case3,
        Family::L43,
    ];

    pub fn lemma_families() -> &'static [Family] {
        &Family::LEMMAS
    }

    pub fn id(&self) -> &'static str {
        match self {
            Family::Nilpotent => "t",
            Family::L41Case1 => "l41-case1",
            Family::L41Case2 => "l41-case2",
            Family::L41Case3 => "l41-case3",
            Family::L42Case1 => "l42-case1",
            Family::L42Case2a => "l42-case2a",
            Family::L42Case2b => "l42-case2b",
            Family::L42Case3 => "l42-case3",
            Family::L43 => "l43",
            Family::FullRank => "full-rank",
            Family::DiagonalCase1 => "diag-case1",
            Family::DiagonalCase2 => "diag-case2",
        }
    }

    pub fn from_id(s: &str) -> Option<Family> {
        [
            Family::Nilpotent,
            Family::L41Case1,
            Family::L41Case2,
            Family::L41Case3,
            Family::L42Case1,
            Family::L42Case2a,
            Family::L42Case2b,
            Family::L42Case3,
            Family::L43,
            Family::FullRank,
            Family::DiagonalCase1,
            Family::DiagonalCase2,
        ]
        .into_iter()
        .find(|f| f.id() == s)
    }

    /// Parameter names accepted by [`lemma_invariants`].
    pub fn parameter_names(&self) -> &'static [&'static str] {
        match self {
            Family::L41Case1 | Family::L41Case2 | Family::L41Case3 => L41_PARAMS,
            Family::L42Case1 | Family::L42Case2a | Family::L42Case2b | Family::L42Case3 => L42_PARAMS,
            _ => &[],
        }
    }

    /// The normalized member of the family; unnamed parameters are zero.
    pub fn defaults(&self) -> Params {
        let set: &[(&str, i64)] = match self {
            Family::L41Case1 => &[("a12", 1), ("a34", -1)],
            Family::L41Case2 => &[("a12", 1), ("a23", 1), ("a34", 1)],
            Family::L41Case3 => &[("a12", 1), ("a23", 1), ("a34", -1), ("lambda2", 1)],
            Family::L42Case1 => &[("a12", 1), ("a34", -1), ("b23", 1), ("lambda2", 1)],
            Family::L42Case2a => &[("a12", 1), ("a34", -1), ("b23", 1), ("b34", 1)],
            Family::L42Case2b => &[("a12", 1), ("b34", 1)],
            Family::L42Case3 => &[("a12", 1), ("a34", -1), ("b23", 1), ("b34", -1), ("sigma12", 1)],
            _ => &[],
        };
        let mut p: Params = self.parameter_names().iter().map(|n| (n.to_string(), Q::zero())).collect();
        for (k, v) in set {
            p.insert(k.to_string(), q(*v));
        }
        p
    }

    /// A random member satisfying the family's conditions, for families with free
    /// parameters. `None` for families without free parameters.
    pub fn sample_parameters(&self, rng: &mut SampleRng) -> Option<Params> {
        let mut r = || random_nonzero_rational(rng, 12);
        let mut p = self.defaults();
        let mut set = |k: &str, v: Q| {
            p.insert(k.to_string(), v);
        };
        match self {
            Family::L41Case1 => {
                let a = r();
                set("a12", a.clone());
                set("a34", -a);
            }
            Family::L41Case2 => {
                set("a12", r());
                set("a23", r());
                set("a34", r());
            }
            Family::L41Case3 => {
                let a = r();
                set("a12", a.clone());
                set("a34", -a);
                set("a23", r());
                set("lambda2", r());
            }
            Family::L42Case1 => {
                let (a, b) = (r(), r());
                set("a12", a.clone());
                set("a34", -a);
                set("b12", b.clone());
                set("b34", -b);
                set("b23", r());
                set("lambda2", r());
            }
            Family::L42Case2a => {
                let mut b34 = r();
                while b34 == -Q::one() {
                    b34 = r();
                }
                set("b34", b34);
            }
            Family::L42Case3 => set("sigma12", r()),
            _ => return None,
        }
        Some(p)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A family member: the algebra, its closed-form invariants and the expected count.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub family: Family,
    pub algebra: LieAlgebra,
    pub parameters: Params,
    pub invariants: Vec<InvariantExpr>,
    pub expected_count: usize,
}

fn violated(msg: impl Into<String>) -> CatalogError {
    CatalogError::ConditionViolated(msg.into())
}

fn param_label(family: Family, params: &Params) -> String {
    if params.is_empty() {
        return family.id().to_string();
    }
    let parts: Vec<String> = family
        .parameter_names()
        .iter()
        .filter(|n| !params[**n].is_zero())
        .map(|n| format!("{n}={}", fmt_q(&params[*n])))
        .collect();
    format!("{}({})", family.id(), parts.join(","))
}

fn merge(family: Family, overrides: &Params) -> Result<Params, CatalogError> {
    let mut p = family.defaults();
    for (k, v) in overrides {
        if !p.contains_key(k) {
            return Err(violated(format!("unknown parameter `{k}` for {family}")));
        }
        p.insert(k.clone(), v.clone());
    }
    Ok(p)
}

fn n(i: usize, k: usize) -> Polynomial {
    Polynomial::var(VarId::n(i, k))
}

fn x(a: usize) -> Polynomial {
    Polynomial::var(VarId::x(a))
}

/// `n12 n24 + n13 n34`.
fn p4() -> Polynomial {
    &(&n(1, 2) * &n(2, 4)) + &(&n(1, 3) * &n(3, 4))
}

fn ratio(num: Polynomial, den: Polynomial) -> InvariantExpr {
    InvariantExpr::from(RationalFn::new(num, &den))
}

/// `num^alpha / den^beta` with `(alpha, beta)` cleared to coprime integers, first nonzero
/// positive.
fn power_ratio(num: Polynomial, alpha: Q, den: Polynomial, beta: Q) -> InvariantExpr {
    let ints = clear_to_coprime_integers(&[alpha, beta]).expect("nonzero exponent pair");
    InvariantExpr::power_product(vec![(num, Q::from_integer(ints[0].clone())), (den, -Q::from_integer(ints[1].clone()))])
}

fn l41_spec(p: &Params) -> CharMatrixSpec {
    let mut spec = CharMatrixSpec::diagonal(4, vec![vec![p["a12"].clone(), p["a23"].clone(), p["a34"].clone()]]);
    for (name, row, col) in [
        ("lambda1", VarId::n(1, 2), VarId::n(2, 4)),
        ("lambda2", VarId::n(2, 3), VarId::n(1, 4)),
        ("lambda3", VarId::n(3, 4), VarId::n(1, 3)),
    ] {
        if !p[name].is_zero() {
            spec = spec.with_off_diagonal(1, row, col, p[name].clone());
        }
    }
    spec
}

fn l42_spec(p: &Params) -> CharMatrixSpec {
    let mut spec = CharMatrixSpec::diagonal(
        4,
        vec![
            vec![p["a12"].clone(), p["a23"].clone(), p["a34"].clone()],
            vec![p["b12"].clone(), p["b23"].clone(), p["b34"].clone()],
        ],
    );
    for (name, row, col) in [
        ("lambda1", VarId::n(1, 2), VarId::n(2, 4)),
        ("lambda2", VarId::n(2, 3), VarId::n(1, 4)),
        ("lambda3", VarId::n(3, 4), VarId::n(1, 3)),
    ] {
        if !p[name].is_zero() {
            spec = spec.with_off_diagonal(2, row, col, p[name].clone());
        }
    }
    if !p["sigma12"].is_zero() {
        spec = spec.with_sigma(1, 2, p["sigma12"].clone());
    }
    spec
}

/// `L(4,1)` or `L(4,2)` from named parameters; missing parameters are zero.
pub fn l4_algebra(f: usize, params: &Params) -> Result<LieAlgebra, CatalogError> {
    let names = match f {
        1 => L41_PARAMS,
        2 => L42_PARAMS,
        _ => return Err(CatalogError::RangeError(format!("parameterized L(4,f) needs f = 1 or 2, got {f}"))),
    };
    let mut p: Params = names.iter().map(|n| (n.to_string(), Q::zero())).collect();
    for (k, v) in params {
        if !p.contains_key(k) {
            return Err(violated(format!("unknown parameter `{k}` for L(4,{f})")));
        }
        p.insert(k.clone(), v.clone());
    }
    let spec = if f == 1 { l41_spec(&p) } else { l42_spec(&p) };
    Ok(build_l(&spec)?)
}

/// Families of `L(4,f)` in the order they are tried for a given parameter set.
pub fn l4_families(f: usize) -> &'static [Family] {
    match f {
        1 => &[Family::L41Case1, Family::L41Case2, Family::L41Case3],
        2 => &[Family::L42Case1, Family::L42Case2a, Family::L42Case3],
        3 => &[Family::L43],
        _ => &[],
    }
}

/// The invariants of an `L(4, f)` family member. Parameters not given take the family's
/// normalized values.
pub fn lemma_invariants(family: Family, overrides: &Params) -> Result<CatalogEntry, CatalogError> {
    let p = merge(family, overrides)?;
    let z1 = z(4, 1)?;
    let z2 = z(4, 2)?;
    let (algebra, invariants, expected_count) = match family {
        Family::L41Case1 | Family::L41Case2 | Family::L41Case3 => {
            let spec = l41_spec(&p);
            let (a12, a23, a34, l2) = (&p["a12"], &p["a23"], &p["a34"], &p["lambda2"]);
            let a14 = a12 + a23 + a34;
            let invariants = match family {
                Family::L41Case1 => {
                    if !a14.is_zero() || !a23.is_zero() || !l2.is_zero() {
                        return Err(violated("three invariants need a14 = a23 = lambda2 = 0"));
                    }
                    if a12.is_zero() {
                        return Err(violated("a12 must be nonzero"));
                    }
                    let third = &p4() + &(&n(1, 4) * &x(1)).scale(&(Q::one() / a12));
                    vec![z1.clone().into(), z2.clone().into(), third.into()]
                }
                Family::L41Case2 => {
                    if !l2.is_zero() {
                        return Err(violated("lambda2 = 0"));
                    }
                    if (a12 + a34).is_zero() && a23.is_zero() {
                        return Err(violated("(a12 + a34, a23) != (0, 0)"));
                    }
                    vec![power_ratio(z2.clone(), a14.clone(), z1.clone(), &a14 + a23)]
                }
                _ => {
                    if !(a12 + a34).is_zero() {
                        return Err(violated("a12 + a34 = 0"));
                    }
                    if l2.is_zero() {
                        return Err(violated("lambda2 != 0"));
                    }
                    let rational = ratio(z2.scale(a23), &z1 * &z1);
                    vec![rational.add(&InvariantExpr::ln(z1.clone()).scale(l2))]
                }
            };
            let count = invariants.len();
            (build_l(&spec)?, invariants, count)
        }
        Family::L42Case1 | Family::L42Case2a | Family::L42Case2b | Family::L42Case3 => {
            let spec = l42_spec(&p);
            let g = |k: &str| p[k].clone();
            let (a12, a23, a34, b12, b23, b34) = (g("a12"), g("a23"), g("a34"), g("b12"), g("b23"), g("b34"));
            let (l1, l2, l3, sigma) = (g("lambda1"), g("lambda2"), g("lambda3"), g("sigma12"));
            let a14 = &a12 + &a23 + &a34;
            let b14 = &b12 + &b23 + &b34;
            if !(&b23 * (&a12 + &a34) - &a23 * (&b12 + &b34)).is_zero() {
                return Err(violated("b23 (a12 + a34) - a23 (b12 + b34) = 0"));
            }
            if !(&a14 * &l2).is_zero() {
                return Err(violated("a14 lambda2 = 0"));
            }
            let no_lambda = l1.is_zero() && l2.is_zero() && l3.is_zero();
            let invariants = match family {
                Family::L42Case1 => {
                    if l2.is_zero() || !l1.is_zero() || !l3.is_zero() {
                        return Err(violated("lambda2 != 0 is the only off-diagonal entry"));
                    }
                    if !a23.is_zero() {
                        return Err(violated("a23 = 0"));
                    }
                    if !sigma.is_zero() {
                        return Err(violated("sigma12 = 0"));
                    }
                    let first = ratio(z2.scale(&b23), &z1 * &z1).add(&InvariantExpr::ln(z1.clone()).scale(&l2));
                    let second = ratio(p4(), n(1, 4)).add(&InvariantExpr::from(x(1).scale(&(Q::one() / &a12))));
                    vec![first, second]
                }
                Family::L42Case2a | Family::L42Case2b => {
                    if !no_lambda || !sigma.is_zero() {
                        return Err(violated("lambda1 = lambda2 = lambda3 = sigma12 = 0"));
                    }
                    if a14.is_zero() && b14.is_zero() {
                        return Err(violated("(a14, b14) != (0, 0)"));
                    }
                    // a nonzero row of the rank-one system on (Z1, Z2)
                    let (e1, e2) =
                        if !a14.is_zero() || !a23.is_zero() { (a14.clone(), &a14 + &a23) } else { (b14.clone(), &b14 + &b23) };
                    let first = power_ratio(z2.clone(), e1, z1.clone(), e2);
                    let a13 = &a12 + &a23;
                    let b13 = &b12 + &b23;
                    let c = &a34 * &b13 - &b34 * &a13;
                    let second = ratio(p4().scale(&c), n(1, 4))
                        .add(&InvariantExpr::from(&x(2).scale(&a14) - &x(1).scale(&b14)));
                    vec![first, second]
                }
                _ => {
                    if !no_lambda {
                        return Err(violated("lambda1 = lambda2 = lambda3 = 0"));
                    }
                    let normalized = [(&a12, 1), (&a23, 0), (&a34, -1), (&b12, 0), (&b23, 1), (&b34, -1)]
                        .iter()
                        .all(|(v, want)| **v == q(*want));
                    if !normalized {
                        return Err(violated("a12 = -a34 = b23 = -b34 = 1 and a23 = b12 = 0"));
                    }
                    let second = &p4() + &(&z1 * &x(1));
                    let log = InvariantExpr::ln(z2.clone()).mul_rational(&RationalFn::from((&z1 * &z1).scale(&sigma)));
                    vec![z1.clone().into(), InvariantExpr::from(second).add(&log)]
                }
            };
            (build_l(&spec)?, invariants, 2)
        }
        Family::L43 => {
            let inv = ratio(p4(), n(1, 4)).add(&InvariantExpr::from(&x(1) - &x(3)));
            (build_l_full_rank(4)?, vec![inv], 1)
        }
        other => return Err(violated(format!("{other} is not an L(4,f) family"))),
    };
    let algebra = algebra.with_name(param_label(family, &p));
    Ok(CatalogEntry { family, algebra, parameters: p, invariants, expected_count })
}

/// `T(M)` with `Z_1, ..., Z_[M/2]`.
pub fn nilpotent_invariants(m: usize) -> Result<CatalogEntry, CatalogError> {
    let algebra = build_t(m)?;
    Ok(CatalogEntry {
        family: Family::Nilpotent,
        algebra,
        parameters: Params::new(),
        invariants: theorem1_basis(m),
        expected_count: m / 2,
    })
}

/// `I_mu = (-1)^(mu+1) (sum_rho W_rho^(mu)) / Z_mu + (x^mu - x^(M-mu))` on `L(M, M-1)`.
pub fn prop1_invariants(m: usize) -> Result<CatalogEntry, CatalogError> {
    let algebra = build_l_full_rank(m)?;
    let mut invariants = Vec::new();
    for mu in 1..=(m - 1) / 2 {
        let sign = if mu % 2 == 1 { Q::one() } else { -Q::one() };
        let frac = ratio(w_sum(m, mu)?.scale(&sign), z(m, mu)?);
        invariants.push(frac.add(&InvariantExpr::from(&x(mu) - &x(m - mu))));
    }
    let expected_count = invariants.len();
    let algebra = algebra.with_name(format!("{}(M={m})", Family::FullRank.id()));
    Ok(CatalogEntry { family: Family::FullRank, algebra, parameters: Params::new(), invariants, expected_count })
}

/// Whether `a_{i(i+1)} + a_{(M-i)(M-i+1)} = 0` for `i = 1..[M/2]`; `diag[p-1] = a_{p(p+1)}`.
pub fn is_diagonal_case1(diag: &[Q]) -> bool {
    let m = diag.len() + 1;
    (1..=m / 2).all(|i| (&diag[i - 1] + &diag[m - i - 1]).is_zero())
}

/// Invariants of the diagonal `L(M,1)` with free diagonal entries `diag`.
pub fn prop2_invariants(m: usize, diag: &[Q]) -> Result<CatalogEntry, CatalogError> {
    if diag.len() + 1 != m {
        return Err(CatalogError::RangeError(format!("expected {} diagonal entries for M = {m}, got {}", m - 1, diag.len())));
    }
    let spec = CharMatrixSpec::diagonal(m, vec![diag.to_vec()]);
    let algebra = build_l(&spec)?;
    let p = m / 2;
    let (family, invariants) = if is_diagonal_case1(diag) {
        let mut invariants = theorem1_basis(m);
        let mut last = InvariantExpr::from(x(1));
        for mu in 1..=(m - 1) / 2 {
            let sign = if mu % 2 == 1 { Q::one() } else { -Q::one() };
            let c = sign * &diag[mu - 1];
            if c.is_zero() {
                continue;
            }
            last = last.add(&ratio(w_sum(m, mu)?.scale(&c), z(m, mu)?));
        }
        invariants.push(last);
        (Family::DiagonalCase1, invariants)
    } else {
        let a1m = spec.diag_entry(1, 1, m);
        if a1m.is_zero() && p >= 3 {
            return Err(CatalogError::DegenerateExponent(format!(
                "a_1{m} = 0 makes every power product a power of Z_1"
            )));
        }
        let z1 = z(m, 1)?;
        let mut invariants = Vec::new();
        for mu in 1..p {
            let w = corner_weight(&spec, 1, mu + 1);
            if w.is_zero() {
                return Err(CatalogError::DegenerateExponent(format!(
                    "sum_k a_k(M+1-k) over k <= {} vanishes",
                    mu + 1
                )));
            }
            invariants.push(power_ratio(z(m, mu + 1)?, a1m.clone(), z1.clone(), w));
        }
        (Family::DiagonalCase2, invariants)
    };
    let label: Vec<String> = diag.iter().map(fmt_q).collect();
    let algebra = algebra.with_name(format!("{}(M={m},a={})", family.id(), label.join(",")));
    let expected_count = if family == Family::DiagonalCase1 { p + 1 } else { p - 1 };
    let parameters = diag.iter().enumerate().map(|(i, v)| (format!("a{}{}", i + 1, i + 2), v.clone())).collect();
    Ok(CatalogEntry { family, algebra, parameters, invariants, expected_count })
}
