//! Closed-form invariants, their verification and independence checks.

pub mod cofactor;
pub mod determinants;
pub mod families;
pub mod independence;
pub mod verify;
pub mod zhat;

pub use cofactor::{cofactor_annihilation_check, CofactorCase, CofactorReport};
pub use determinants::{theorem1_basis, w, w_matrix, w_sum, z, z_matrix};
pub use families::{
    is_diagonal_case1, l4_algebra, l4_families, lemma_invariants, nilpotent_invariants, prop1_invariants, prop2_invariants, CatalogEntry, Family,
    Params,
};
pub use independence::{jacobian_rank, MAX_BAD_SAMPLES};
pub use verify::{verify_invariant, Certificate, GeneratorCheck};
pub use zhat::{corner_weight, diagonal_zhat, x_coefficients, zhat_operator};
