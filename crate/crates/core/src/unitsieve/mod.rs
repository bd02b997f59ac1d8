//! Seventh-power character sieve on cyclotomic unit classes of `Z[zeta_13]`.

mod character;
mod constraints;
mod linalg;
mod sieve;

pub use character::{
    build_character, generator_independence_rank, linear_element, one_minus_zeta, tables_above, CharValue,
    LocalCharacterTable, ELL, RANK,
};
pub use constraints::{load_constraints, rm_residue_sets, ConstraintMode, SieveConstraint};
pub use linalg::{solve_affine, AffineSpace};
pub use sieve::{
    class_index, class_vector, local_survivors, local_survivors_exhaustive, sieve_case, DescentCase, LocalSieve,
    SieveOutcome, Survivors, CLASS_COUNT,
};

#[cfg(test)]
mod tests;
