//! Exact integer, polynomial and finite-field arithmetic.

pub mod ff;
pub mod ffpoly;
pub mod intutil;
pub mod matrix;
pub mod poly;

pub use ff::{FfElem, FiniteField};
pub use ffpoly::{poly_factor_mod_p, FfPoly, FfPolyRing};
pub use poly::Poly;

use num_bigint::BigUint;

/// `x^e` in the parent field of `x`.
pub fn ff_pow(field: &FiniteField, x: &FfElem, e: &BigUint) -> FfElem {
    field.pow(x, e)
}

/// True iff `x^((N-1)/n) = 1`; errors on `x = 0` or `n` not dividing `N - 1`.
pub fn is_nth_power_residue(field: &FiniteField, x: &FfElem, n: u64) -> crate::error::Result<bool> {
    field.is_nth_power_residue(x, n)
}
