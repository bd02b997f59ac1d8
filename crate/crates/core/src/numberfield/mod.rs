//! Monogenic orders, prime splitting, residue maps, norms and valuations.

mod element;
mod order;

pub use element::NfElem;
pub use order::{dedekind_maximal_at, NumberFieldOrder, PrimeIdealData};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactarith::matrix::solve;
use crate::exactarith::{FfElem, FiniteField};
use crate::scalar::Scalar;

/// Elements of an order (integer coordinates).
pub type OrderElement = NfElem<BigInt>;

/// Reduce an integer into `F_p`.
pub fn reduce_int(field: &FiniteField, c: &BigInt) -> FfElem {
    let p = BigInt::from(field.characteristic());
    field.from_u64(c.mod_floor(&p).to_u64().unwrap())
}

/// Image of `x` in a field of characteristic `q`, sending `theta` to `theta_image`.
pub fn reduce_into(x: &OrderElement, field: &FiniteField, theta_image: &FfElem) -> FfElem {
    x.coords()
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, theta_image), &reduce_int(field, c)))
}

/// Image of `x` in the residue field of `p`.
pub fn reduce_element(x: &OrderElement, p: &PrimeIdealData) -> FfElem {
    reduce_into(x, &p.field, &p.theta)
}

/// `Norm(x)` as the resultant of `f` and the polynomial representing `x`.
pub fn element_norm(x: &OrderElement) -> BigInt {
    let order = x.order().expect("norm needs an order");
    if x.is_zero() {
        return BigInt::zero();
    }
    order.poly().resultant(&x.as_poly())
}

/// `v_P(x)` at a prime that is alone above its rational prime.
pub fn valuation_at(x: &OrderElement, p: &PrimeIdealData) -> Result<u32> {
    if !p.unique {
        return Err(Error::UnsupportedValuation { key: p.key() });
    }
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.order().is_none() {
        return Err(Error::UnknownOrder(p.order_label.clone()));
    }
    let mut n = element_norm(x);
    let q = BigInt::from(p.q);
    let mut v = 0u32;
    while n.is_multiple_of(&q) {
        n /= &q;
        v += 1;
    }
    Ok(v / p.fdeg as u32)
}

/// `u_a = 1 + zeta + ... + zeta^(a-1)` for `a = 2..=6` in `Z[zeta_13]`.
pub fn cyclotomic_unit_generators() -> Vec<OrderElement> {
    let order = NumberFieldOrder::builtin("Zzeta13").expect("built-in order");
    (2..=6).map(|a| NfElem::from_ints(&order, &vec![1; a])).collect()
}

/// Largest degree for which [`automorphisms`] searches root permutations.
pub const MAX_AUTOMORPHISM_DEGREE: usize = 6;

/// Automorphisms of the order, each given as the image of `theta`.
///
/// For every assignment of complex roots `theta_i -> theta_pi(i)` the interpolating
/// polynomial is solved numerically and rounded; only images that satisfy
/// `f(sigma(theta)) = 0` exactly are kept. The identity is always present.
pub fn automorphisms(order: &Arc<NumberFieldOrder>) -> Result<Vec<OrderElement>> {
    let n = order.degree();
    if n > MAX_AUTOMORPHISM_DEGREE {
        return Err(Error::Schema(format!(
            "automorphism search supports degree <= {MAX_AUTOMORPHISM_DEGREE}, {} has degree {n}",
            order.label()
        )));
    }
    let roots = order.poly().complex_roots();
    let vander: Vec<Vec<Complex64>> =
        roots.iter().map(|r| (0..n).map(|j| r.powu(j as u32)).collect()).collect();
    let mut out: Vec<OrderElement> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |pi| {
        let rhs: Vec<Complex64> = pi.iter().map(|&k| roots[k]).collect();
        let Some(c) = solve(vander.clone(), rhs) else { return };
        if c.iter().any(|z| z.im.abs() > 1e-6 || (z.re - z.re.round()).abs() > 1e-6) {
            return;
        }
        let coords: Vec<BigInt> = c.iter().map(|z| BigInt::from(z.re.round() as i64)).collect();
        let cand = NfElem::new(order, coords);
        let value = order.poly().eval_in(&cand, |c| NfElem::from_int(c).in_order(order));
        if value.is_zero() && !out.contains(&cand) {
            out.push(cand);
        }
    });
    out.sort_by_key(|e| e.coords());
    Ok(out)
}

fn permutations(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// How an automorphism `sigma` (image of `theta`) permutes the primes above `q`:
/// maps each key to the key of its image.
pub fn prime_permutation(
    order: &Arc<NumberFieldOrder>,
    sigma: &OrderElement,
    q: u64,
) -> Result<BTreeMap<String, String>> {
    let primes = order.split_prime(q)?;
    let mut out = BTreeMap::new();
    for p in primes.iter() {
        for target in primes.iter() {
            let image = reduce_element(sigma, target);
            let g = &p.factor;
            let value = g
                .coeffs()
                .iter()
                .rev()
                .fold(target.field.zero(), |acc, c| {
                    target.field.add(&target.field.mul(&acc, &image), &reduce_int(&target.field, c))
                });
            if target.field.is_zero(&value) {
                out.insert(p.key(), target.key());
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
