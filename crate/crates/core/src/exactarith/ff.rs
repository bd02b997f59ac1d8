//! Finite fields `F_p[t]/(m(t))` with an explicit, caller-supplied modulus.
//!
//! Elements are plain coefficient vectors; all arithmetic goes through the
//! owning [`FiniteField`], which keeps elements small and `Send + Sync`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::ffpoly::FfPolyRing;
use super::intutil::{is_prime, mul_mod, pow_mod, prime_factors_of_qk_minus_one};
use crate::error::{Error, Result};

/// Coefficients over `F_p` in ascending powers of the generator; always length `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FfElem(pub SmallVec<[u64; 8]>);

impl fmt::Debug for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0.as_slice())
        }
    }
}

impl FfElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    /// Monic modulus of degree `k`, ascending coefficients (length `k + 1`).
    modulus: Vec<u64>,
    size: BigUint,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.degree(), self.modulus)
    }
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        Ok(FiniteField { p, modulus: vec![0, 1], size: BigUint::from(p) })
    }

    /// `F_p[t]/(modulus)`; the modulus is made monic and must be irreducible.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = Self::prime(p)?;
        let ring = FfPolyRing::new(&base);
        let m = ring.from_u64s(modulus);
        if m.len() < 2 {
            return Err(Error::ReducibleModulus(p));
        }
        let m = ring.monic(&m);
        if !ring.is_irreducible(&m) {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(Self::from_monic_unchecked(p, m.iter().map(|c| c.0[0]).collect()))
    }

    pub(crate) fn from_monic_unchecked(p: u64, modulus: Vec<u64>) -> Self {
        let k = modulus.len() - 1;
        FiniteField { p, modulus, size: BigUint::from(p).pow(k as u32) }
    }

    /// The first monic irreducible of degree `k` in lexicographic enumeration
    /// (coefficients compared from the constant term upward, as a base-`p` number).
    pub fn canonical(p: u64, k: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if k == 1 {
            return Ok(base);
        }
        let ring = FfPolyRing::new(&base);
        let mut digits = vec![0u64; k];
        loop {
            let mut m: Vec<u64> = digits.clone();
            m.push(1);
            let poly = ring.from_u64s(&m);
            if digits[0] != 0 && ring.is_irreducible(&poly) {
                return Ok(Self::from_monic_unchecked(p, m));
            }
            let mut i = 0;
            loop {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
                assert!(i < k, "no irreducible polynomial found");
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field size `N = p^k`.
    pub fn size(&self) -> &BigUint {
        &self.size
    }

    /// Field size when it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        u64::try_from(&self.size).ok()
    }

    pub fn zero(&self) -> FfElem {
        FfElem(SmallVec::from_elem(0, self.degree()))
    }

    pub fn one(&self) -> FfElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FfElem {
        let mut v = self.zero();
        v.0[0] = c % self.p;
        v
    }

    pub fn from_i64(&self, c: i64) -> FfElem {
        self.from_u64(c.rem_euclid(self.p as i64) as u64)
    }

    /// Reduce an arbitrary coefficient vector (any length) modulo the field modulus.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FfElem {
        let mut buf: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        self.reduce_in_place(&mut buf);
        let mut v = self.zero();
        for (i, c) in buf.into_iter().take(self.degree()).enumerate() {
            v.0[i] = c;
        }
        v
    }

    /// The class of `t`, the generator of the defining extension.
    pub fn generator(&self) -> FfElem {
        if self.degree() == 1 {
            // t = -m0 for a linear modulus t + m0.
            return self.from_u64((self.p - self.modulus[0]) % self.p);
        }
        let mut v = self.zero();
        v.0[1] = 1;
        v
    }

    pub fn is_zero(&self, a: &FfElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FfElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p;
        FfElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let p = self.p;
        FfElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + p - y) % p).collect())
    }

    pub fn neg(&self, a: &FfElem) -> FfElem {
        let p = self.p;
        FfElem(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn scale(&self, a: &FfElem, s: u64) -> FfElem {
        let p = self.p;
        let s = s % p;
        FfElem(a.0.iter().map(|&x| mul_mod(x, s, p)).collect())
    }

    fn reduce_in_place(&self, buf: &mut Vec<u64>) {
        let k = self.degree();
        let p = self.p;
        for i in (k..buf.len()).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let t = mul_mod(c, self.modulus[j], p);
                buf[i - k + j] = (buf[i - k + j] + p - t) % p;
            }
            buf[i] = 0;
        }
        buf.truncate(k.max(1));
    }

    pub fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        let k = self.degree();
        let p = self.p;
        if k == 1 {
            return FfElem(SmallVec::from_elem(mul_mod(a.0[0], b.0[0], p), 1));
        }
        let mut buf: SmallVec<[u128; 24]> = SmallVec::from_elem(0, 2 * k - 1);
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                buf[i + j] += x as u128 * y as u128;
            }
        }
        // At most k products < 2^64 each are accumulated per slot, so u128 cannot overflow.
        let mut red: Vec<u64> = buf.iter().map(|&v| (v % p as u128) as u64).collect();
        self.reduce_in_place(&mut red);
        let mut out = self.zero();
        out.0.copy_from_slice(&red[..k]);
        out
    }

    pub fn square(&self, a: &FfElem) -> FfElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FfElem, e: &BigUint) -> FfElem {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &FfElem, e: u64) -> FfElem {
        self.pow(a, &BigUint::from(e))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FfElem) -> Option<FfElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(self.from_u64(pow_mod(a.0[0], self.p - 2, self.p)));
        }
        let e = &self.size - BigUint::from(2u32);
        Some(self.pow(a, &e))
    }

    pub fn div(&self, a: &FfElem, b: &FfElem) -> Option<FfElem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// Absolute trace down to `F_p`.
    pub fn trace(&self, a: &FfElem) -> u64 {
        let p = BigUint::from(self.p);
        let mut acc = self.zero();
        let mut x = a.clone();
        for _ in 0..self.degree() {
            acc = self.add(&acc, &x);
            x = self.pow(&x, &p);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0));
        acc.0[0]
    }

    /// `x^((N-1)/n) == 1`, i.e. `x` is an `n`-th power in the field.
    pub fn is_nth_power_residue(&self, x: &FfElem, n: u64) -> Result<bool> {
        if self.is_zero(x) {
            return Err(Error::ZeroElement);
        }
        let order = &self.size - BigUint::one();
        if n == 0 || !(&order % n).is_zero() {
            return Err(Error::NotDivisor { n, order: order.to_string() });
        }
        Ok(self.is_one(&self.pow(x, &(order / n))))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: &FfElem) -> Result<u128> {
        if self.is_zero(x) {
            return Err(Error::ZeroElement);
        }
        let group: u128 = u128::try_from(&self.size - BigUint::one()).expect("field too large");
        let mut order = group;
        for r in prime_factors_of_qk_minus_one(self.p, self.degree() as u32) {
            while order % r == 0 && self.is_one(&self.pow(x, &BigUint::from(order / r))) {
                order /= r;
            }
        }
        Ok(order)
    }

    /// Encode as the integer `sum c_i p^i`; inverse of [`decode`](Self::decode).
    pub fn encode(&self, a: &FfElem) -> u64 {
        a.0.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn decode(&self, mut idx: u64) -> FfElem {
        let mut v = self.zero();
        for c in v.0.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }

    /// The generator of `F_N^*` with least encoding.
    pub fn least_primitive_element(&self) -> FfElem {
        let group = &self.size - BigUint::one();
        let primes = prime_factors_of_qk_minus_one(self.p, self.degree() as u32);
        let mut idx = 1u64;
        loop {
            let g = self.decode(idx);
            let is_gen = primes
                .iter()
                .all(|&r| !self.is_one(&self.pow(&g, &(&group / BigUint::from(r)))));
            if is_gen {
                return g;
            }
            idx += 1;
        }
    }

    /// All elements in encoding order; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FfElem> + '_ {
        let n = self.size_u64().expect("field too large to enumerate");
        (0..n).map(move |i| self.decode(i))
    }
}
