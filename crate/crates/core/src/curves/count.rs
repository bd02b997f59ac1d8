//! Point-counting kernels over explicit finite fields.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactarith::{FfElem, FfPoly, FfPolyRing, FiniteField};

/// Largest field that the enumeration kernels accept.
pub const MAX_ENUMERATION: u64 = 1 << 24;

/// Below this size the kernels stay on the calling thread.
const PARALLEL_THRESHOLD: u64 = 4096;

pub(crate) fn enumerable_size(field: &FiniteField) -> Result<u64> {
    match field.size_u64() {
        Some(n) if n <= MAX_ENUMERATION => Ok(n),
        _ => Err(Error::FieldTooLarge(field.size().to_string())),
    }
}

/// `is_square[encode(x)]` for every `x`, zero included.
pub(crate) fn square_table(field: &FiniteField) -> Result<Vec<bool>> {
    let n = enumerable_size(field)?;
    let mut table = vec![false; n as usize];
    let squares: Vec<u64> = if n > PARALLEL_THRESHOLD {
        (0..n).into_par_iter().map(|i| { let x = field.decode(i); field.encode(&field.square(&x)) }).collect()
    } else {
        (0..n).map(|i| { let x = field.decode(i); field.encode(&field.square(&x)) }).collect()
    };
    for s in squares {
        table[s as usize] = true;
    }
    Ok(table)
}

/// Sum of `per_x(x)` over every element of the field, in parallel for large fields.
fn sum_over_field(field: &FiniteField, per_x: impl Fn(&FfElem) -> u64 + Sync) -> Result<u64> {
    let n = enumerable_size(field)?;
    if n > PARALLEL_THRESHOLD {
        Ok((0..n).into_par_iter().map(|i| per_x(&field.decode(i))).sum())
    } else {
        Ok((0..n).map(|i| per_x(&field.decode(i))).sum())
    }
}

/// Number of projective points of `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
pub fn count_weierstrass(field: &FiniteField, a: &[FfElem; 5]) -> Result<u64> {
    let [a1, a2, a3, a4, a6] = a;
    let f = field;
    if f.characteristic() == 2 {
        // y^2 + A y = B with A = a1 x + a3: one root if A = 0, else two or none by the
        // trace of B / A^2.
        let affine = sum_over_field(f, |x| {
            let big_a = f.add(&f.mul(a1, x), a3);
            let x2 = f.square(x);
            let rhs = [f.mul(&x2, x), f.mul(a2, &x2), f.mul(a4, x), a6.clone()]
                .iter()
                .fold(f.zero(), |acc, t| f.add(&acc, t));
            if f.is_zero(&big_a) {
                1
            } else {
                let t = f.div(&rhs, &f.square(&big_a)).unwrap();
                if f.trace(&t) == 0 {
                    2
                } else {
                    0
                }
            }
        })?;
        return Ok(affine + 1);
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    let b2 = f.add(&f.square(a1), &f.scale(a2, 4));
    let b4 = f.add(&f.scale(a4, 2), &f.mul(a1, a3));
    let b6 = f.add(&f.square(a3), &f.scale(a6, 4));
    let cubic: FfPoly = vec![b6, f.scale(&b4, 2), b2, f.from_u64(4)];
    Ok(count_double_cover(f, &cubic)? + 1)
}

/// Affine points of `y^2 = g(x)` in odd characteristic: `sum_x (1 + chi(g(x)))`.
pub fn count_double_cover(field: &FiniteField, g: &FfPoly) -> Result<u64> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let table = square_table(field)?;
    let ring = FfPolyRing::new(field);
    sum_over_field(field, |x| {
        let v = ring.eval(g, x);
        if field.is_zero(&v) {
            1
        } else if table[field.encode(&v) as usize] {
            2
        } else {
            0
        }
    })
}

/// Points on the smooth model of `y^2 = f(x)` for a squarefree `f` of degree 5 or 6.
pub fn count_sextic_model(field: &FiniteField, f: &FfPoly) -> Result<u64> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let ring = FfPolyRing::new(field);
    let deg = ring.degree(f);
    let squarefree = ring.degree(&ring.gcd(f, &ring.derivative(f))) == Some(0);
    if !matches!(deg, Some(5) | Some(6)) || !squarefree {
        return Err(Error::SingularReduction(format!("F_{}", field.size())));
    }
    let affine = count_double_cover(field, f)?;
    let infinity = if deg == Some(5) {
        1
    } else if field.is_nth_power_residue(&f[6], 2)? {
        2
    } else {
        0
    };
    Ok(affine + infinity)
}
