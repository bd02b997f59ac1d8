//! Igusa-Clebsch invariants of binary sextics via transvectants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::FieldScalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IgusaClebsch<T> {
    pub i2: T,
    pub i4: T,
    pub i6: T,
    pub i10: T,
}

impl<T: Clone> IgusaClebsch<T> {
    pub fn as_array(&self) -> [T; 4] {
        [self.i2.clone(), self.i4.clone(), self.i6.clone(), self.i10.clone()]
    }
}

/// Weights of `(I2, I4, I6, I10)` in the weighted projective space.
pub const IC_WEIGHTS: [u32; 4] = [1, 2, 3, 5];

/// Binary form `sum c[j] x^(m-j) y^j` with `m = c.len() - 1`.
type Form<T> = Vec<T>;

fn d_dx<T: FieldScalar>(f: &Form<T>) -> Form<T> {
    let m = f.len() - 1;
    (0..m).map(|j| f[j].clone() * T::from_i64((m - j) as i64)).collect()
}

fn d_dy<T: FieldScalar>(f: &Form<T>) -> Form<T> {
    (1..f.len()).map(|j| f[j].clone() * T::from_i64(j as i64)).collect()
}

fn partial<T: FieldScalar>(f: &Form<T>, nx: usize, ny: usize) -> Form<T> {
    let mut g = f.clone();
    for _ in 0..nx {
        g = d_dx(&g);
    }
    for _ in 0..ny {
        g = d_dy(&g);
    }
    g
}

fn product<T: FieldScalar>(f: &Form<T>, g: &Form<T>) -> Form<T> {
    let mut out = vec![T::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn binomial(n: usize, k: usize) -> i64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(f, g)_k`, normalized by `(m-k)! (n-k)! / (m! n!)`.
pub fn transvectant<T: FieldScalar>(f: &[T], g: &[T], k: usize) -> Vec<T> {
    let (f, g) = (f.to_vec(), g.to_vec());
    let (m, n) = (f.len() - 1, g.len() - 1);
    assert!(k <= m && k <= n, "transvectant order exceeds a degree");
    let mut acc = vec![T::zero(); m + n - 2 * k + 1];
    for j in 0..=k {
        let term = product(&partial(&f, k - j, j), &partial(&g, j, k - j));
        let c = T::from_i64(binomial(k, j) * if j % 2 == 0 { 1 } else { -1 });
        for (a, t) in acc.iter_mut().zip(term) {
            *a = a.clone() + c.clone() * t;
        }
    }
    let scale = T::from_i64(factorial(m - k) * factorial(n - k)) / T::from_i64(factorial(m) * factorial(n));
    acc.into_iter().map(|a| a * scale.clone()).collect()
}

/// Igusa-Clebsch invariants of `sum c[i] x^i` (ascending, `c.len() == 7`).
///
/// A sextic with a repeated root gets `I10 = 0`; a quintic is treated as a sextic
/// with a root at infinity.
pub fn igusa_clebsch_sextic<T: FieldScalar>(c: &[T; 7]) -> IgusaClebsch<T> {
    let f: Form<T> = c.iter().rev().cloned().collect();
    let i = transvectant(&f, &f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(&f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    let a = transvectant(&f, &f, 6)[0].clone();
    let b = transvectant(&i, &i, 4)[0].clone();
    let cc = transvectant(&i, &delta, 4)[0].clone();
    let d = transvectant(&y3, &y1, 2)[0].clone();
    let k = |n: i64| T::from_i64(n);
    let a2 = a.clone() * a.clone();
    let a3 = a2.clone() * a.clone();
    let i2 = k(-120) * a.clone();
    let i4 = k(-720) * a2.clone() + k(6750) * b.clone();
    let i6 = k(8640) * a3.clone() - k(108000) * a.clone() * b.clone() + k(202500) * cc.clone();
    let i10 = k(-62208) * a3.clone() * a2.clone() + k(972000) * a3 * b.clone() + k(1620000) * a2 * cc.clone()
        - k(3037500) * a.clone() * b.clone() * b.clone()
        - k(6075000) * b * cc
        - k(4556250) * d;
    IgusaClebsch { i2, i4, i6, i10 }
}

/// Equality of two invariant tuples as points of weighted projective space
/// `P(1, 2, 3, 5)`; both `I10` must be non-zero.
pub fn weighted_pp_equal<T: FieldScalar>(v: &IgusaClebsch<T>, w: &IgusaClebsch<T>) -> Result<bool> {
    if v.i10.is_zero() || w.i10.is_zero() {
        return Err(Error::ZeroI10);
    }
    let (v, w) = (v.as_array(), w.as_array());
    let pow = |x: &T, e: u32| (0..e).fold(T::one(), |acc, _| acc * x.clone());
    for i in 0..4 {
        for j in i + 1..4 {
            let (di, dj) = (IC_WEIGHTS[i], IC_WEIGHTS[j]);
            let lhs = pow(&v[i], dj) * pow(&w[j], di);
            let rhs = pow(&v[j], di) * pow(&w[i], dj);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sextic(c: [i64; 7]) -> [BigRational; 7] {
        c.map(q)
    }

    #[test]
    fn repeated_root_gives_zero_i10() {
        // (x - 1)^2 (x^4 + x + 3)
        let f = [3, -5, 1, 1, 1, -2, 1];
        assert!(igusa_clebsch_sextic(&sextic(f)).i10.is_zero());
    }

    #[test]
    fn i10_is_the_discriminant() {
        use crate::exactarith::Poly;
        for f in [[1, 0, 0, 0, 0, 0, 1], [-3, 2, 0, 5, -1, 0, 2], [7, 1, 1, 0, 0, 3, -4]] {
            let ic = igusa_clebsch_sextic(&sextic(f));
            let disc = Poly::from_ints(&f).discriminant();
            assert_eq!(ic.i10, BigRational::from_integer(disc));
        }
    }

    #[test]
    fn matches_root_difference_definition() {
        // Frozen from the root-difference formulas, evaluated numerically at high
        // precision and rounded.
        let cases: [([i64; 7], [i64; 4]); 4] = [
            ([-1, 0, 0, 0, 0, 0, 1], [240, 1620, 119880, 46656]),
            ([-4, 0, 0, 0, 0, 0, 4], [3840, 414720, 491028480, 48922361856]),
            ([-3, 2, 0, 5, -1, 0, 2], [1590, 7344, 15700824, 3378113100]),
            ([1, 1, 1, 0, 0, 1, 1], [-200, 1348, -79916, -36235]),
        ];
        for (f, expected) in cases {
            assert_eq!(igusa_clebsch_sextic(&sextic(f)).as_array(), expected.map(q), "{f:?}");
        }
    }

    proptest! {
        #[test]
        fn covariant_under_affine_substitution(
            c in proptest::array::uniform7(-6i64..6),
            lam in 1i64..4,
            mu in -3i64..3,
        ) {
            use crate::exactarith::Poly;
            let f = Poly::from_ints(&c);
            prop_assume!(f.degree() == Some(6));
            let g = f.compose(&Poly::from_ints(&[mu, lam]));
            let a = igusa_clebsch_sextic(&sextic(c));
            let gc: [BigRational; 7] = (0..7).map(|i| BigRational::from_integer(g.coeff(i))).collect::<Vec<_>>().try_into().unwrap();
            let b = igusa_clebsch_sextic(&gc);
            let l = q(lam);
            let lp = |e: u32| (0..e).fold(q(1), |acc, _| acc * l.clone());
            prop_assert_eq!(b.i2.clone(), a.i2.clone() * lp(6));
            prop_assert_eq!(b.i4.clone(), a.i4.clone() * lp(12));
            prop_assert_eq!(b.i6.clone(), a.i6.clone() * lp(18));
            prop_assert_eq!(b.i10.clone(), a.i10.clone() * lp(30));
            if !a.i10.is_zero() {
                prop_assert!(weighted_pp_equal(&a, &b).unwrap());
            }
        }
    }
}
