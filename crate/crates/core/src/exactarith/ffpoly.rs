//! Univariate polynomials over an explicit finite field: gcd, modular powers,
//! Rabin irreducibility and Cantor-Zassenhaus factorization.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ff::{FfElem, FiniteField};
use super::intutil::is_prime;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Ascending coefficients, no trailing zeros; the zero polynomial is empty.
pub type FfPoly = Vec<FfElem>;

/// Fixed seed for the randomized equal-degree splitting; every retry draws from
/// the same stream so factorizations are reproducible.
const EDF_SEED: u64 = 0x6d6f_646d_6574_6864;

#[derive(Clone, Debug)]
pub struct FfPolyRing {
    field: FiniteField,
}

impl FfPolyRing {
    pub fn new(field: &FiniteField) -> Self {
        FfPolyRing { field: field.clone() }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn trim(&self, mut a: FfPoly) -> FfPoly {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn from_u64s(&self, coeffs: &[u64]) -> FfPoly {
        self.trim(coeffs.iter().map(|&c| self.field.from_u64(c)).collect())
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> FfPoly {
        self.trim(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    /// Reduce an integer polynomial into this ring.
    pub fn from_int_poly(&self, f: &Poly<BigInt>) -> FfPoly {
        let p = BigInt::from(self.field.characteristic());
        let coeffs = f.coeffs().iter().map(|c| {
            let r = c.mod_floor_big(&p);
            self.field.from_u64(r)
        });
        self.trim(coeffs.collect())
    }

    pub fn one(&self) -> FfPoly {
        vec![self.field.one()]
    }

    pub fn x(&self) -> FfPoly {
        vec![self.field.zero(), self.field.one()]
    }

    pub fn constant(&self, c: FfElem) -> FfPoly {
        self.trim(vec![c])
    }

    pub fn degree(&self, a: &FfPoly) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn is_one(&self, a: &FfPoly) -> bool {
        a.len() == 1 && self.field.is_one(&a[0])
    }

    pub fn add(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        let n = a.len().max(b.len());
        let zero = self.field.zero();
        let out = (0..n)
            .map(|i| self.field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        let n = a.len().max(b.len());
        let zero = self.field.zero();
        let out = (0..n)
            .map(|i| self.field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.trim(out)
    }

    pub fn mul(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &FfPoly, s: &FfElem) -> FfPoly {
        self.trim(a.iter().map(|c| self.field.mul(c, s)).collect())
    }

    pub fn monic(&self, a: &FfPoly) -> FfPoly {
        match a.last() {
            None => Vec::new(),
            Some(lead) => {
                let inv = self.field.inv(lead).expect("trimmed leading coefficient");
                self.scale(a, &inv)
            }
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, a: &FfPoly, b: &FfPoly) -> (FfPoly, FfPoly) {
        let db = self.degree(b).expect("division by zero polynomial");
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let inv = self.field.inv(&b[db]).expect("trimmed leading coefficient");
        let mut q = vec![self.field.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if self.field.is_zero(&r[i]) {
                continue;
            }
            let c = self.field.mul(&r[i], &inv);
            for (j, bj) in b.iter().enumerate() {
                let t = self.field.mul(&c, bj);
                r[i - db + j] = self.field.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        self.divrem(a, b).1
    }

    /// Exact quotient `a / b`.
    pub fn div_exact(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, a: &FfPoly, b: &FfPoly) -> FfPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn derivative(&self, a: &FfPoly) -> FfPoly {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.scale(c, i as u64))
            .collect();
        self.trim(out)
    }

    pub fn eval(&self, a: &FfPoly, x: &FfElem) -> FfElem {
        a.iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    /// `a^e mod m`.
    pub fn powmod(&self, a: &FfPoly, e: &BigUint, m: &FfPoly) -> FfPoly {
        let base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// `x^(Q^d) mod m` where `Q` is the field size.
    fn frobenius_power(&self, m: &FfPoly, d: usize) -> FfPoly {
        let q = self.field.size();
        let mut h = self.rem(&self.x(), m);
        for _ in 0..d {
            h = self.powmod(&h, q, m);
        }
        h
    }

    /// Rabin's test over the coefficient field.
    pub fn is_irreducible(&self, f: &FfPoly) -> bool {
        let Some(n) = self.degree(f) else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic(f);
        let x = self.x();
        if self.sub(&self.frobenius_power(&f, n), &self.rem(&x, &f)).len() != 0 {
            return false;
        }
        for r in (2..=n).filter(|&r| n % r == 0 && is_prime(r as u64)) {
            let h = self.sub(&self.frobenius_power(&f, n / r), &x);
            if !self.is_one(&self.gcd(&h, &f)) {
                return false;
            }
        }
        true
    }

    /// `c^(1/p)` for the Frobenius `c -> c^p`.
    fn pth_root(&self, c: &FfElem) -> FfElem {
        let p = BigUint::from(self.field.characteristic());
        let e = p.pow(self.field.degree() as u32 - 1);
        self.field.pow(c, &e)
    }

    /// Squarefree decomposition of a monic polynomial: `(g_i, i)` with `f = prod g_i^i`.
    pub fn squarefree(&self, f: &FfPoly) -> Vec<(FfPoly, usize)> {
        let p = self.field.characteristic() as usize;
        let f = self.monic(f);
        let mut out = Vec::new();
        let mut c = self.gcd(&f, &self.derivative(&f));
        let mut w = self.div_exact(&f, &c);
        let mut i = 1;
        while !self.is_one(&w) {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y);
            if !self.is_one(&fac) {
                out.push((fac, i));
            }
            c = self.div_exact(&c, &y);
            w = y;
            i += 1;
        }
        if !self.is_one(&c) {
            // c is a polynomial in x^p.
            let root: FfPoly = c.iter().step_by(p).map(|a| self.pth_root(a)).collect();
            for (g, m) in self.squarefree(&root) {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial: `(g_d, d)` with
    /// `g_d` the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self, f: &FfPoly) -> Vec<(FfPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = self.x();
        let mut h = self.rem(&x, &rest);
        let mut d = 1;
        while self.degree(&rest).unwrap_or(0) >= 2 * d {
            h = self.powmod(&h, self.field.size(), &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if !self.is_one(&g) {
                rest = self.div_exact(&rest, &g);
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(n) = self.degree(&rest) {
            if n > 0 {
                out.push((rest, n));
            }
        }
        out
    }

    fn random_poly(&self, deg_bound: usize, rng: &mut ChaCha8Rng) -> FfPoly {
        let p = self.field.characteristic();
        let k = self.field.degree();
        let coeffs = (0..deg_bound)
            .map(|_| {
                let digits: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
                self.field.from_coeffs(&digits)
            })
            .collect();
        self.trim(coeffs)
    }

    /// A candidate splitting polynomial for equal-degree factorization.
    fn splitter(&self, a: &FfPoly, f: &FfPoly, d: usize) -> FfPoly {
        let q = self.field.size();
        if self.field.characteristic() == 2 {
            // Absolute trace map a + a^2 + ... + a^(2^(kd-1)).
            let two = BigUint::from(2u32);
            let steps = self.field.degree() * d;
            let mut t = self.rem(a, f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = self.powmod(&t, &two, f);
                acc = self.add(&acc, &t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            self.sub(&self.powmod(a, &e, f), &self.one())
        }
    }

    /// Split a monic squarefree product of irreducibles of common degree `d`.
    pub fn equal_degree(&self, f: &FfPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FfPoly> {
        let n = self.degree(f).unwrap_or(0);
        if n <= d {
            return vec![self.monic(f)];
        }
        loop {
            let a = self.random_poly(n, rng);
            if self.degree(&a).unwrap_or(0) == 0 {
                continue;
            }
            let g = self.gcd(&self.splitter(&a, f, d), f);
            let dg = self.degree(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.div_exact(f, &g);
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities, sorted by
    /// degree and then by coefficients read from the top down.
    pub fn factor(&self, f: &FfPoly) -> Result<Vec<(FfPoly, usize)>> {
        if f.is_empty() {
            return Err(Error::ZeroPolynomial(self.field.characteristic()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
        let mut out = Vec::new();
        for (g, m) in self.squarefree(f) {
            for (h, d) in self.distinct_degree(&g) {
                for irr in self.equal_degree(&h, d, &mut rng) {
                    out.push((irr, m));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| self.cmp_polys(a, b));
        Ok(out)
    }

    pub fn cmp_polys(&self, a: &FfPoly, b: &FfPoly) -> std::cmp::Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            let ea = a.iter().rev().map(|c| self.field.encode(c));
            let eb = b.iter().rev().map(|c| self.field.encode(c));
            ea.cmp(eb)
        })
    }

    /// Distinct roots in the coefficient field, sorted by encoding.
    pub fn roots(&self, f: &FfPoly) -> Result<Vec<FfElem>> {
        let mut roots: Vec<FfElem> = self
            .factor(f)?
            .into_iter()
            .filter(|(g, _)| g.len() == 2)
            .map(|(g, _)| self.field.neg(&g[0]))
            .collect();
        roots.sort_by_key(|r| self.field.encode(r));
        Ok(roots)
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, p: &BigInt) -> u64;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, p: &BigInt) -> u64 {
        let mut r = self % p;
        if r.is_negative() {
            r += p;
        }
        r.to_u64().expect("residue fits in u64")
    }
}

/// Factor an integer polynomial modulo a prime `p`. Factors are monic with
/// coefficients in `[0, p)`; their product with multiplicities equals `f` up to the
/// leading coefficient.
pub fn poly_factor_mod_p(f: &Poly<BigInt>, p: u64) -> Result<Vec<(Poly<BigInt>, usize)>> {
    let field = FiniteField::prime(p)?;
    let ring = FfPolyRing::new(&field);
    let reduced = ring.from_int_poly(f);
    let factors = ring.factor(&reduced)?;
    Ok(factors
        .into_iter()
        .map(|(g, m)| {
            let coeffs = g.iter().map(|c| BigInt::from(c.0[0])).collect();
            (Poly::new(coeffs), m)
        })
        .collect())
}
