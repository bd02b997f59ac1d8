//! Order of Frobenius in `PGL_2` for a residual characteristic polynomial
//! `X^2 - a X + N` over a finite field.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactarith::{FfElem, FfPolyRing, FiniteField};

/// What a repeated eigenvalue contributes: a non-trivial unipotent (order `l`) or a
/// scalar matrix (order 1). The characteristic polynomial alone cannot tell them apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepeatedRootConvention {
    #[default]
    Unipotent,
    Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveOrder {
    pub order: u128,
    pub repeated_root: bool,
}

/// Projective order of a Frobenius with trace `a` (an element of `field`) and
/// determinant `N`.
///
/// The eigenvalues live in the quadratic extension of `field`; `field` is embedded
/// there through the least root of its modulus, and the order of `lambda1 / lambda2`
/// is returned.
pub fn frobenius_projective_order(
    field: &FiniteField,
    a: &FfElem,
    n: u64,
    convention: RepeatedRootConvention,
) -> Result<ProjectiveOrder> {
    let l = field.characteristic();
    if n % l == 0 {
        return Err(Error::CharacteristicDividesNorm { l, n });
    }
    let big = FiniteField::canonical(l, 2 * field.degree())?;
    let ring = FfPolyRing::new(&big);
    let gen_image = if field.degree() == 1 {
        big.one()
    } else {
        let modulus = ring.from_u64s(field.modulus());
        ring.roots(&modulus)?.into_iter().next().expect("modulus splits in the extension")
    };
    // a = sum c_i t^i with t the class of the modulus' root.
    let a_big = a
        .coeffs()
        .iter()
        .rev()
        .fold(big.zero(), |acc, &c| big.add(&big.mul(&acc, &gen_image), &big.from_u64(c)));
    let charpoly = vec![big.from_u64(n % l), big.neg(&a_big), big.one()];
    let roots = ring.roots(&charpoly)?;
    match roots.as_slice() {
        [_] => Ok(ProjectiveOrder {
            order: match convention {
                RepeatedRootConvention::Unipotent => l as u128,
                RepeatedRootConvention::Scalar => 1,
            },
            repeated_root: true,
        }),
        [r1, r2] => {
            let ratio = big.div(r1, r2).expect("roots are units since l does not divide N");
            Ok(ProjectiveOrder { order: big.element_order(&ratio)?, repeated_root: false })
        }
        _ => unreachable!("a monic quadratic splits in the quadratic extension"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force in `F_p`: roots of the quadratic in `F_{p^2}` are found by search.
    fn naive_order_prime(p: u64, a: u64, n: u64) -> Option<u128> {
        let big = FiniteField::canonical(p, 2).unwrap();
        let roots: Vec<FfElem> = big
            .elements()
            .filter(|x| {
                let v = big.add(&big.sub(&big.square(x), &big.mul(&big.from_u64(a), x)), &big.from_u64(n));
                big.is_zero(&v)
            })
            .collect();
        if roots.len() != 2 {
            return None;
        }
        let ratio = big.div(&roots[0], &roots[1]).unwrap();
        let mut k = 1u128;
        let mut acc = ratio.clone();
        while !big.is_one(&acc) {
            acc = big.mul(&acc, &ratio);
            k += 1;
        }
        Some(k)
    }

    #[test]
    fn agrees_with_search_over_small_primes() {
        for p in [3u64, 5, 7, 11] {
            let f = FiniteField::prime(p).unwrap();
            for a in 0..p {
                for n in 1..p {
                    let got = frobenius_projective_order(&f, &f.from_u64(a), n, Default::default()).unwrap();
                    match naive_order_prime(p, a, n) {
                        Some(k) => assert_eq!((got.order, got.repeated_root), (k, false), "p={p} a={a} n={n}"),
                        None => assert!(got.repeated_root && got.order == p as u128),
                    }
                }
            }
        }
    }

    #[test]
    fn extension_field_trace() {
        // X^2 - t X + 1 over F_9 with t^2 = -1: eigenvalue ratio has order dividing 80.
        let f = FiniteField::extension(3, &[1, 0, 1]).unwrap();
        let t = f.generator();
        let got = frobenius_projective_order(&f, &t, 1, Default::default()).unwrap();
        assert!(!got.repeated_root);
        assert_eq!(80 % got.order, 0);
    }

    #[test]
    fn rejects_norm_divisible_by_characteristic() {
        let f = FiniteField::prime(5).unwrap();
        assert!(matches!(
            frobenius_projective_order(&f, &f.one(), 10, Default::default()),
            Err(Error::CharacteristicDividesNorm { .. })
        ));
    }

    #[test]
    fn scalar_convention_for_repeated_root() {
        let f = FiniteField::prime(7).unwrap();
        // (X - 1)^2 = X^2 - 2X + 1
        let got = frobenius_projective_order(&f, &f.from_u64(2), 1, RepeatedRootConvention::Scalar).unwrap();
        assert_eq!(got, ProjectiveOrder { order: 1, repeated_root: true });
    }
}
