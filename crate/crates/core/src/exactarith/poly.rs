//! Dense univariate polynomials over a generic scalar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::matrix::determinant;
use crate::scalar::{ExactDiv, FieldScalar, Scalar};

/// Coefficients in ascending degree order; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, deg: usize) -> Self {
        let mut v = vec![T::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate at a point of another ring, mapping coefficients with `lift`.
    pub fn eval_in<U: Scalar>(&self, x: &U, lift: impl Fn(&T) -> U) -> U {
        let mut acc = U::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + lift(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// Division by a monic polynomial; valid over any commutative ring.
    pub fn divrem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = rem[i - d + j].clone() - c.clone() * dc.clone();
            }
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem_monic(&self, divisor: &Self) -> Self {
        self.divrem_monic(divisor).1
    }
}

impl<T: ExactDiv> Poly<T> {
    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, other: &Self) -> T {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return T::zero();
        };
        if m == 0 && n == 0 {
            return T::one();
        }
        let size = m + n;
        let mut rows = vec![vec![T::zero(); size]; size];
        for r in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                rows[r][r + j] = c.clone();
            }
        }
        for r in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + r][r + j] = c.clone();
            }
        }
        determinant(rows)
    }

    /// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> T {
        let n = self.degree().expect("discriminant of zero polynomial");
        let res = self.resultant(&self.derivative());
        let lc = self.leading().unwrap().clone();
        let d = res / lc;
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

impl<T: FieldScalar> Poly<T> {
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let lc = divisor.leading().expect("division by zero polynomial").clone();
        let inv = T::one() / lc;
        let monic = divisor.scale(&inv);
        let (q, r) = self.divrem_monic(&monic);
        (q.scale(&inv), r)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&(T::one() / lc.clone())),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Poly<BigInt> {
    /// Complex roots by Durand-Kerner iteration; intended for bound checks only.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let f: Poly<Complex64> = self.map(|c| Complex64::from_int(c));
        let n = match f.degree() {
            None | Some(0) => return Vec::new(),
            Some(n) => n,
        };
        let lc = *f.leading().unwrap();
        let f = f.scale(&(Complex64::one() / lc));
        let radius = 1.0
            + f.coeffs[..n]
                .iter()
                .map(|c| c.norm())
                .fold(0.0_f64, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..n)
            .map(|i| seed.powu(i as u32) * radius)
            .collect();
        for _ in 0..2000 {
            let mut delta = 0.0_f64;
            for i in 0..n {
                let num = f.eval(&roots[i]);
                let mut den = Complex64::one();
                for j in 0..n {
                    if i != j {
                        den *= roots[i] - roots[j];
                    }
                }
                let step = num / den;
                roots[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-14 * radius {
                break;
            }
        }
        roots
    }

    /// Real roots if every root is (numerically) real, otherwise `None`.
    pub fn all_real_roots(&self) -> Option<Vec<f64>> {
        let roots = self.complex_roots();
        let scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0_f64, f64::max);
        roots
            .iter()
            .map(|r| (r.im.abs() <= 1e-7 * scale).then_some(r.re))
            .collect()
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

// Polynomials over a ring form a ring, so they can themselves be coefficients
// (bivariate polynomials are `Poly<Poly<T>>`).
impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<T: Scalar> Scalar for Poly<T> {
    fn from_int(n: &BigInt) -> Self {
        Poly::constant(T::from_int(n))
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type IntPoly = Poly<BigInt>;

    #[test]
    fn normalizes_trailing_zeros() {
        let p = IntPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPoly::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn divrem_monic_reconstructs() {
        let f = IntPoly::from_ints(&[5, -3, 0, 2, 7]);
        let g = IntPoly::from_ints(&[1, 1, 1]);
        let (q, r) = f.divrem_monic(&g);
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn discriminants_of_fixture_polynomials() {
        assert_eq!(IntPoly::from_ints(&[-3, -1, 1]).discriminant(), BigInt::from(13));
        assert_eq!(IntPoly::from_ints(&[1, -4, 1, 1]).discriminant(), BigInt::from(169));
        assert_eq!(IntPoly::from_ints(&[-2, 0, 1]).discriminant(), BigInt::from(8));
        assert_eq!(IntPoly::from_ints(&[-1, -2, 1, 1]).discriminant(), BigInt::from(49));
    }

    #[test]
    fn resultant_matches_product_of_values() {
        // Res(x^2 - 2, x + 3) = (-3)^2 - 2 = 7.
        let f = IntPoly::from_ints(&[-2, 0, 1]);
        let g = IntPoly::from_ints(&[3, 1]);
        assert_eq!(f.resultant(&g), BigInt::from(7));
    }

    #[test]
    fn rational_gcd() {
        let a = Poly::<BigRational>::from_ints(&[-1, 0, 1]);
        let b = Poly::<BigRational>::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn real_roots_of_totally_real_cubic() {
        let roots = IntPoly::from_ints(&[-1, -2, 1, 1]).all_real_roots().unwrap();
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r * r * r + r * r - 2.0 * r - 1.0).abs() < 1e-9);
        }
        assert!(IntPoly::from_ints(&[1, 0, 1]).all_real_roots().is_none());
    }

    #[test]
    fn bivariate_as_nested() {
        // (x + y)^2 evaluated at x = 2, y = 3.
        let x = Poly::<Poly<BigInt>>::constant(IntPoly::x());
        let y = Poly::<Poly<BigInt>>::x();
        let s = &x + &y;
        let sq = &s * &s;
        let inner = sq.eval(&IntPoly::from_ints(&[3]));
        assert_eq!(inner.eval(&BigInt::from(2)), BigInt::from(25));
    }
}
