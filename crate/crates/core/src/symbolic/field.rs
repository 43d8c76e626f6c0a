use std::collections::BTreeMap;
use std::fmt;

use super::polynomial::Polynomial;
use super::rational::Q;
use super::var::VarId;

/// First-order derivation `sum_j c_j * d/d(var_j)` with polynomial coefficients.
/// Absent entries are zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VectorField {
    coeffs: BTreeMap<VarId, Polynomial>,
}

impl VectorField {
    pub fn zero() -> Self {
        VectorField::default()
    }

    pub fn partial(v: VarId) -> Self {
        let mut out = VectorField::zero();
        out.add_component(v, Polynomial::one());
        out
    }

    pub fn from_components(parts: impl IntoIterator<Item = (VarId, Polynomial)>) -> Self {
        let mut out = VectorField::zero();
        for (v, c) in parts {
            out.add_component(v, c);
        }
        out
    }

    pub fn add_component(&mut self, v: VarId, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(v).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn coefficient(&self, v: VarId) -> Polynomial {
        self.coeffs.get(&v).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (VarId, &Polynomial)> {
        self.coeffs.iter().map(|(v, c)| (*v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn apply_poly(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (v, c) in &self.coeffs {
            let d = p.derivative(*v);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            out.add_component(*v, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> VectorField {
        VectorField::from_components(self.coeffs.iter().map(|(v, p)| (*v, p.scale(c))))
    }

    /// Pointwise product with a function: `p * self`.
    pub fn mul_poly(&self, p: &Polynomial) -> VectorField {
        VectorField::from_components(self.coeffs.iter().map(|(v, c)| (*v, p * c)))
    }

    /// Lie bracket `self ∘ other - other ∘ self` as derivations.
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        let mut out = VectorField::zero();
        for v in self.coeffs.keys().chain(other.coeffs.keys()) {
            if out.coeffs.contains_key(v) {
                continue;
            }
            let c = &self.apply_poly(&other.coefficient(*v)) - &other.apply_poly(&self.coefficient(*v));
            out.add_component(*v, c);
        }
        out
    }

    /// Drops components along the given variables.
    pub fn restrict(&self, keep: impl Fn(VarId) -> bool) -> VectorField {
        VectorField { coeffs: self.coeffs.iter().filter(|(v, _)| keep(**v)).map(|(v, c)| (*v, c.clone())).collect() }
    }

    /// The part acting on the variables selected by `keep`, with coefficients also
    /// truncated to those variables (other variables set to zero).
    pub fn reduce_to(&self, keep: &dyn Fn(VarId) -> bool) -> VectorField {
        let zero_out = |v: VarId| if keep(v) { None } else { Some(Polynomial::zero()) };
        VectorField::from_components(
            self.coeffs.iter().filter(|(v, _)| keep(**v)).map(|(v, c)| (*v, c.substitute(&zero_out))),
        )
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (v, c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "d/d{v}")?;
            } else {
                write!(f, "({c})*d/d{v}")?;
            }
        }
        Ok(())
    }
}
