//! Elements of a monogenic order (or its fraction field) in the power basis of `theta`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::order::NumberFieldOrder;
use crate::exactarith::matrix::solve;
use crate::exactarith::Poly;
use crate::scalar::{ExactDiv, FieldScalar, Scalar};

/// `sum coords[i] * theta^i`.
///
/// An element without an order is a bare constant; this is what `Zero::zero()` and
/// `Scalar::from_int` produce, and it combines with any order.
#[derive(Clone)]
pub struct NfElem<T> {
    order: Option<Arc<NumberFieldOrder>>,
    coords: Vec<T>,
}

impl<T: Scalar> NfElem<T> {
    pub fn new(order: &Arc<NumberFieldOrder>, coords: Vec<T>) -> Self {
        let mut e = NfElem { order: Some(order.clone()), coords };
        e.normalize();
        e
    }

    pub fn from_ints(order: &Arc<NumberFieldOrder>, coords: &[i64]) -> Self {
        Self::new(order, coords.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn constant(order: &Arc<NumberFieldOrder>, c: T) -> Self {
        Self::new(order, vec![c])
    }

    /// The generator `theta` of the order.
    pub fn theta(order: &Arc<NumberFieldOrder>) -> Self {
        Self::new(order, vec![T::zero(), T::one()])
    }

    pub fn order(&self) -> Option<&Arc<NumberFieldOrder>> {
        self.order.as_ref()
    }

    /// Coordinates padded to the order's degree (length 1 for a bare constant).
    pub fn coords(&self) -> Vec<T> {
        let n = self.order.as_ref().map_or(1, |o| o.degree());
        let mut c = self.coords.clone();
        c.resize(n.max(c.len()), T::zero());
        c
    }

    pub fn as_poly(&self) -> Poly<T> {
        Poly::new(self.coords.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> NfElem<U> {
        let mut e = NfElem { order: self.order.clone(), coords: self.coords.iter().map(f).collect() };
        e.trim();
        e
    }

    /// Attach an order to a bare constant; elements that already carry one are unchanged.
    pub fn in_order(mut self, order: &Arc<NumberFieldOrder>) -> Self {
        if self.order.is_none() {
            self.order = Some(order.clone());
        }
        self
    }

    fn trim(&mut self) {
        while self.coords.last().is_some_and(|c| c.is_zero()) {
            self.coords.pop();
        }
    }

    fn normalize(&mut self) {
        if let Some(o) = &self.order {
            if self.coords.len() > o.degree() {
                let f: Poly<T> = o.poly().map(T::from_int);
                self.coords = Poly::new(std::mem::take(&mut self.coords)).rem_monic(&f).into_coeffs();
            }
        }
        self.trim();
    }

    fn joint_order(&self, other: &Self) -> Option<Arc<NumberFieldOrder>> {
        match (&self.order, &other.order) {
            (Some(a), Some(b)) => {
                assert_eq!(a.label(), b.label(), "elements of different orders combined");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        let n = self.coords.len().max(other.coords.len());
        let get = |v: &Vec<T>, i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
        let coords = (0..n).map(|i| op(get(&self.coords, i), get(&other.coords, i))).collect();
        let mut e = NfElem { order: self.joint_order(other), coords };
        e.trim();
        e
    }

    /// Matrix of multiplication by `self`: column `j` holds the coordinates of `self * theta^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<T>> {
        let order = self.order.as_ref().expect("multiplication matrix needs an order");
        let n = order.degree();
        let mut m = vec![vec![T::zero(); n]; n];
        let mut col = self.clone();
        let theta = Self::theta(order);
        for j in 0..n {
            let c = col.coords();
            for i in 0..n {
                m[i][j] = c[i].clone();
            }
            col = col * theta.clone();
        }
        m
    }
}

impl NfElem<BigInt> {
    pub fn to_rational(&self) -> NfElem<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl<T: Scalar> PartialEq for NfElem<T> {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.order, &other.order) {
            if a.label() != b.label() {
                return false;
            }
        }
        self.coords == other.coords
    }
}

impl<T: Scalar> fmt::Debug for NfElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = self.order.as_ref().map_or("", |o| o.label());
        write!(f, "{label}{:?}", self.coords)
    }
}

impl<T: Scalar> Add for NfElem<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for NfElem<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Neg for NfElem<T> {
    type Output = Self;
    fn neg(self) -> Self {
        NfElem { order: self.order, coords: self.coords.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Scalar> Mul for NfElem<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let order = self.joint_order(&rhs);
        let (short, long) = if self.coords.len() <= rhs.coords.len() { (self, rhs) } else { (rhs, self) };
        if short.coords.len() <= 1 {
            let s = short.coords.first().cloned().unwrap_or_else(T::zero);
            let mut e = NfElem { order, coords: long.coords.into_iter().map(|c| c * s.clone()).collect() };
            e.trim();
            return e;
        }
        let prod = &short.as_poly() * &long.as_poly();
        let mut e = NfElem { order, coords: prod.into_coeffs() };
        e.normalize();
        e
    }
}

impl<T: FieldScalar> NfElem<T> {
    /// Multiplicative inverse in the fraction field; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let Some(order) = &self.order else {
            return Some(NfElem { order: None, coords: vec![T::one() / self.coords[0].clone()] });
        };
        let n = order.degree();
        let mut rhs = vec![T::zero(); n];
        rhs[0] = T::one();
        let x = solve(self.multiplication_matrix(), rhs)?;
        Some(Self::new(order, x))
    }
}

impl<T: FieldScalar> Div for NfElem<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero")
    }
}

impl<T: Scalar> Zero for NfElem<T> {
    fn zero() -> Self {
        NfElem { order: None, coords: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

impl<T: Scalar> One for NfElem<T> {
    fn one() -> Self {
        NfElem { order: None, coords: vec![T::one()] }
    }
}

impl<T: Scalar> Scalar for NfElem<T> {
    fn from_int(n: &BigInt) -> Self {
        let mut e = NfElem { order: None, coords: vec![T::from_int(n)] };
        e.trim();
        e
    }
}

impl<T: FieldScalar> ExactDiv for NfElem<T> {}
impl<T: FieldScalar> FieldScalar for NfElem<T> {}
