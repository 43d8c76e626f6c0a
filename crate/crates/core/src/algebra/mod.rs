//! `T(M)`, its solvable extensions `L(M, f)`, coadjoint fields and invariant counts.

pub mod build;
pub mod charmat;
pub mod coadjoint;
pub mod json;
pub mod lie;
pub mod rank;

pub use build::{build_l, build_l_full_rank, build_t, full_rank_spec};
pub use charmat::{is_allowed_slot, nilindependent, CharMatrixSpec, OffDiagonal};
pub use coadjoint::{closed_form_fields, coadjoint_fields, n_field, x_field};
pub use json::{algebra_from_json, algebra_to_json, AlgebraJson};
pub use lie::LieAlgebra;
pub use rank::{invariant_count, invariant_count_with, structure_matrix, RankConfirmation, RankReport};
