//! Elliptic curves in long Weierstrass form over a monogenic order.

use std::sync::Arc;

use serde::Serialize;

use super::count::count_weierstrass;
use crate::error::{Error, Result};
use crate::exactarith::{FfElem, FiniteField};
use crate::numberfield::{reduce_element, reduce_into, NumberFieldOrder, OrderElement, PrimeIdealData};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug)]
pub struct EllipticCurveNF {
    order: Arc<NumberFieldOrder>,
    /// `[a1, a2, a3, a4, a6]`.
    a: [OrderElement; 5],
}

/// Weierstrass covariants.
#[derive(Clone, Debug, PartialEq)]
pub struct EcInvariants<T> {
    pub b2: T,
    pub b4: T,
    pub b6: T,
    pub b8: T,
    pub c4: T,
    pub c6: T,
    pub disc: T,
}

/// Standard `b`, `c` and discriminant formulas over any commutative ring.
pub fn weierstrass_invariants<T: Scalar>(a: &[T; 5]) -> EcInvariants<T> {
    let [a1, a2, a3, a4, a6] = a.clone();
    let k = |n: i64| T::from_i64(n);
    let b2 = a1.clone() * a1.clone() + k(4) * a2.clone();
    let b4 = k(2) * a4.clone() + a1.clone() * a3.clone();
    let b6 = a3.clone() * a3.clone() + k(4) * a6.clone();
    let b8 = a1.clone() * a1.clone() * a6.clone() + k(4) * a2.clone() * a6.clone()
        - a1 * a3.clone() * a4.clone()
        + a2 * a3.clone() * a3
        - a4.clone() * a4;
    let c4 = b2.clone() * b2.clone() - k(24) * b4.clone();
    let c6 = -(b2.clone() * b2.clone() * b2.clone()) + k(36) * b2.clone() * b4.clone() - k(216) * b6.clone();
    let disc = -(b2.clone() * b2.clone() * b8.clone()) - k(8) * b4.clone() * b4.clone() * b4.clone()
        - k(27) * b6.clone() * b6.clone()
        + k(9) * b2.clone() * b4.clone() * b6.clone();
    EcInvariants { b2, b4, b6, b8, c4, c6, disc }
}

impl EllipticCurveNF {
    /// Errors when the discriminant vanishes.
    pub fn new(order: &Arc<NumberFieldOrder>, a: [OrderElement; 5]) -> Result<Self> {
        let a = a.map(|x| x.in_order(order));
        let e = EllipticCurveNF { order: order.clone(), a };
        if num_traits::Zero::is_zero(&e.invariants().disc) {
            return Err(Error::SingularCurve);
        }
        Ok(e)
    }

    pub fn from_ints(order: &Arc<NumberFieldOrder>, a: [&[i64]; 5]) -> Result<Self> {
        Self::new(order, a.map(|c| OrderElement::from_ints(order, c)))
    }

    pub fn order(&self) -> &Arc<NumberFieldOrder> {
        &self.order
    }

    pub fn coefficients(&self) -> &[OrderElement; 5] {
        &self.a
    }

    pub fn invariants(&self) -> EcInvariants<OrderElement> {
        weierstrass_invariants(&self.a)
    }

    /// `(c4, c6, disc)`.
    pub fn ec_invariants(&self) -> (OrderElement, OrderElement, OrderElement) {
        let inv = self.invariants();
        (inv.c4, inv.c6, inv.disc)
    }

    /// Reduction type of this (assumed minimal) model at `p`, read off from whether
    /// `disc` and `c4` vanish in the residue field; this is `v_P = 0` versus `v_P > 0`
    /// and needs no valuation machinery.
    pub fn reduction_type(&self, p: &PrimeIdealData) -> ReductionType {
        let (c4, _, disc) = self.ec_invariants();
        if !p.field.is_zero(&reduce_element(&disc, p)) {
            ReductionType::Good
        } else if !p.field.is_zero(&reduce_element(&c4, p)) {
            ReductionType::Multiplicative
        } else {
            ReductionType::Additive
        }
    }

    fn reduced(&self, field: &FiniteField, theta: &FfElem) -> [FfElem; 5] {
        self.a.clone().map(|x| reduce_into(&x, field, theta))
    }

    /// `#E(F_{N^ext})` for good reduction at `p`.
    pub fn count_points(&self, p: &PrimeIdealData, ext: usize) -> Result<u64> {
        if self.reduction_type(p) != ReductionType::Good {
            return Err(Error::BadReduction(p.key()));
        }
        let (field, theta) = p.extended_field(ext)?;
        count_weierstrass(&field, &self.reduced(&field, &theta))
    }

    /// `a_P = N + 1 - #E(F_N)`.
    pub fn trace(&self, p: &PrimeIdealData) -> Result<i64> {
        let n = p.norm_u64() as i64;
        let count = self.count_points(p, 1)? as i64;
        let a = n + 1 - count;
        if a * a > 4 * n {
            return Err(Error::WeilBound { key: p.key(), value: a.to_string(), norm: n as u64 });
        }
        Ok(a)
    }

    /// Traces at every good supported prime of norm at most `bound`, keyed by prime.
    pub fn traces_up_to(&self, bound: u64) -> Result<Vec<(PrimeIdealData, Result<i64>)>> {
        Ok(self
            .order
            .primes_up_to_norm(bound)?
            .into_iter()
            .map(|p| {
                let t = self.trace(&p);
                (p, t)
            })
            .collect())
    }
}

