//! Scalar traits shared by the generic polynomial, matrix and number-field code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A commutative ring element that can be built from an integer.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_int(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }
}

/// A scalar whose `Div` is exact whenever the quotient exists in the ring.
///
/// Integers qualify (Bareiss elimination only performs exact divisions);
/// fields qualify trivially.
pub trait ExactDiv: Scalar + Div<Output = Self> {}

/// A scalar forming a field.
pub trait FieldScalar: ExactDiv {}

impl Scalar for BigInt {
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
}

impl ExactDiv for BigInt {}

impl Scalar for BigRational {
    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl ExactDiv for BigRational {}
impl FieldScalar for BigRational {}

impl Scalar for i64 {
    fn from_int(n: &BigInt) -> Self {
        n.to_i64().expect("integer does not fit in i64")
    }
}

impl Scalar for f64 {
    fn from_int(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl ExactDiv for f64 {}
impl FieldScalar for f64 {}

impl Scalar for Complex64 {
    fn from_int(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl ExactDiv for Complex64 {}
impl FieldScalar for Complex64 {}
