//! Exact symbolic layer: rationals, sparse polynomials, rational functions, formal
//! log/power expressions, derivations and matrices of polynomials.

pub mod expr;
pub mod field;
pub mod matrix;
pub mod polynomial;
pub mod rational;
pub mod ratfn;
pub mod text;
pub mod var;

pub use expr::{InvariantExpr, LogTerm, PowerTerm};
pub use field::VectorField;
pub use matrix::{PolyMatrix, RationalMatrix};
pub use polynomial::{Monomial, Polynomial};
pub use rational::Q;
pub use ratfn::RationalFn;
pub use var::{Universe, VarId};
