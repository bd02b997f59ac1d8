//! Exact arithmetic, number-field orders, curve point counting, eigenvalue packets,
//! modular-method elimination and a unit sieve over `Z[zeta_13]`.

pub mod curves;
pub mod elimination;
pub mod error;
pub mod exactarith;
pub mod jsonint;
pub mod newformdata;
pub mod numberfield;
pub mod scalar;
pub mod unitsieve;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type IntPoly = exactarith::Poly<BigInt>;
pub type RatPoly = exactarith::Poly<BigRational>;
pub type OrderElement = numberfield::NfElem<BigInt>;
pub type FieldElement = numberfield::NfElem<BigRational>;
