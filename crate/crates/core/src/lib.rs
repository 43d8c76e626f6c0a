//! Exact construction and verification of coadjoint invariants for the triangular
//! nilpotent Lie algebras `T(M)` and their solvable extensions `L(M, f)`.

pub mod algebra;
pub mod catalog;
pub mod certify;
pub mod error;
pub mod sampling;
pub mod symbolic;
