//! Monogenic orders `Z[x]/(f)` and the primes above a rational prime.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactarith::intutil::is_prime;
use crate::exactarith::{FfElem, FfPoly, FfPolyRing, FiniteField, Poly};

/// A prime of the order above `q`, addressed externally as `"q.index"`.
#[derive(Clone)]
pub struct PrimeIdealData {
    pub order_label: String,
    pub q: u64,
    /// 1-based position among the primes above `q` in canonical order.
    pub index: usize,
    pub fdeg: usize,
    pub e: usize,
    /// Monic irreducible factor of `f mod q`, coefficients in `[0, q)`.
    pub factor: Poly<BigInt>,
    /// Residue field `F_q[t]/(factor)`; `theta` maps to `t`.
    pub field: Arc<FiniteField>,
    pub theta: FfElem,
    /// True when this is the only prime above `q`.
    pub unique: bool,
}

impl PrimeIdealData {
    pub fn key(&self) -> String {
        format!("{}.{}", self.q, self.index)
    }

    pub fn norm(&self) -> BigUint {
        BigUint::from(self.q).pow(self.fdeg as u32)
    }

    pub fn norm_u64(&self) -> u64 {
        self.q.pow(self.fdeg as u32)
    }

    /// The residue field extended to degree `ext` over itself, with the image of `theta`.
    ///
    /// The extension is the canonical field of size `N^ext`; `theta` goes to the least
    /// root of `factor` there, so the embedding is deterministic.
    pub fn extended_field(&self, ext: usize) -> Result<(Arc<FiniteField>, FfElem)> {
        if ext == 1 {
            return Ok((self.field.clone(), self.theta.clone()));
        }
        let big = FiniteField::canonical(self.q, self.fdeg * ext)?;
        let ring = FfPolyRing::new(&big);
        let roots = ring.roots(&ring.from_int_poly(&self.factor))?;
        let theta = roots.into_iter().next().expect("factor splits in the extension");
        Ok((Arc::new(big), theta))
    }
}

impl fmt::Debug for PrimeIdealData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{} (f={}, e={})", self.order_label, self.key(), self.fdeg, self.e)
    }
}

pub struct NumberFieldOrder {
    label: String,
    poly: Poly<BigInt>,
    disc: BigInt,
    excluded: Vec<u64>,
    primes: Mutex<HashMap<u64, Arc<Vec<PrimeIdealData>>>>,
}

impl fmt::Debug for NumberFieldOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = Z[x]/({:?})", self.label, self.poly)
    }
}

/// Defining polynomials of the built-in orders, ascending coefficients.
const BUILTINS: &[(&str, &[i64])] = &[
    ("Q", &[0, 1]),
    ("Qsqrt13", &[-3, -1, 1]),
    ("K13cubic", &[1, -4, 1, 1]),
    ("Zzeta13", &[1; 13]),
    ("Zsqrt2", &[-2, 0, 1]),
];

impl NumberFieldOrder {
    /// `f` must be monic and certifiably irreducible over `Q`; `excluded` lists primes
    /// known to divide the index of `Z[theta]` in the maximal order.
    pub fn new(label: &str, poly: Poly<BigInt>, excluded: Vec<u64>) -> Result<Self> {
        if !poly.is_monic() || poly.degree() == Some(0) {
            return Err(Error::Schema(format!("defining polynomial of {label} must be monic of positive degree")));
        }
        if !certify_irreducible(&poly) {
            return Err(Error::Schema(format!("could not certify irreducibility of the polynomial for {label}")));
        }
        let disc = poly.discriminant();
        Ok(NumberFieldOrder {
            label: label.to_string(),
            poly,
            disc,
            excluded,
            primes: Mutex::new(HashMap::new()),
        })
    }

    /// One of the built-in orders: `Q`, `Qsqrt13`, `K13cubic`, `Zzeta13`, `Zsqrt2`.
    pub fn builtin(label: &str) -> Result<Arc<Self>> {
        static REGISTRY: OnceLock<Vec<Arc<NumberFieldOrder>>> = OnceLock::new();
        let all = REGISTRY.get_or_init(|| {
            BUILTINS
                .iter()
                .map(|(l, c)| Arc::new(Self::new(l, Poly::from_ints(c), Vec::new()).expect("built-in order")))
                .collect()
        });
        all.iter()
            .find(|o| o.label == label)
            .cloned()
            .ok_or_else(|| Error::UnknownOrder(label.to_string()))
    }

    pub fn builtin_labels() -> Vec<&'static str> {
        BUILTINS.iter().map(|(l, _)| *l).collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn poly(&self) -> &Poly<BigInt> {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Primes above `q`, memoized.
    pub fn split_prime(&self, q: u64) -> Result<Arc<Vec<PrimeIdealData>>> {
        if let Some(hit) = self.primes.lock().unwrap().get(&q) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(self.compute_split(q)?);
        self.primes.lock().unwrap().insert(q, computed.clone());
        Ok(computed)
    }

    fn compute_split(&self, q: u64) -> Result<Vec<PrimeIdealData>> {
        if !is_prime(q) || q >= 1 << 32 {
            return Err(Error::NotPrime(q));
        }
        let unsupported = || Error::UnsupportedPrime { order: self.label.clone(), q };
        if self.excluded.contains(&q) {
            return Err(unsupported());
        }
        let qq = BigInt::from(q) * BigInt::from(q);
        if self.disc.is_multiple_of(&qq) && !dedekind_maximal_at(&self.poly, q)? {
            return Err(unsupported());
        }
        let base = FiniteField::prime(q)?;
        let ring = FfPolyRing::new(&base);
        let mut factors: Vec<(Poly<BigInt>, usize)> = ring
            .factor(&ring.from_int_poly(&self.poly))?
            .into_iter()
            .map(|(g, m)| (Poly::new(g.iter().map(|c| BigInt::from(c.0[0])).collect()), m))
            .collect();
        factors.sort_by_key(|(g, _)| canonical_factor_key(g, q));
        let unique = factors.len() == 1;
        factors
            .into_iter()
            .enumerate()
            .map(|(i, (g, e))| {
                let fdeg = g.degree().unwrap();
                let (field, theta) = if fdeg == 1 {
                    let f = FiniteField::prime(q)?;
                    let root = f.neg(&f.from_u64(g.coeff(0).to_u64().unwrap()));
                    (f, root)
                } else {
                    let m: Vec<u64> = g.coeffs().iter().map(|c| c.to_u64().unwrap()).collect();
                    let f = FiniteField::from_monic_unchecked(q, m);
                    let t = f.generator();
                    (f, t)
                };
                Ok(PrimeIdealData {
                    order_label: self.label.clone(),
                    q,
                    index: i + 1,
                    fdeg,
                    e,
                    factor: g,
                    field: Arc::new(field),
                    theta,
                    unique,
                })
            })
            .collect()
    }

    /// Resolve a `"q.i"` key.
    pub fn prime(&self, key: &str) -> Result<PrimeIdealData> {
        let bad = || Error::BadPrimeKey(key.to_string());
        let (q, i) = key.split_once('.').ok_or_else(bad)?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        let i: usize = i.parse().map_err(|_| bad())?;
        let primes = self.split_prime(q).map_err(|e| match e {
            Error::NotPrime(_) => bad(),
            other => other,
        })?;
        primes.get(i.wrapping_sub(1)).cloned().ok_or_else(bad)
    }

    /// All supported primes of norm at most `bound`, ordered by norm then key.
    pub fn primes_up_to_norm(&self, bound: u64) -> Result<Vec<PrimeIdealData>> {
        let mut out = Vec::new();
        for q in (2..=bound).filter(|&q| is_prime(q)) {
            for p in self.split_prime(q)?.iter() {
                if p.norm() <= BigUint::from(bound) {
                    out.push(p.clone());
                }
            }
        }
        out.sort_by_key(|p| (p.norm_u64(), p.q, p.index));
        Ok(out)
    }
}

/// Degree first; linear factors by their root in `[0, q)`; otherwise by `sum c_i q^i`.
fn canonical_factor_key(g: &Poly<BigInt>, q: u64) -> (usize, BigInt) {
    let d = g.degree().unwrap();
    if d == 1 {
        let root = (BigInt::from(q) - g.coeff(0)).mod_floor(&BigInt::from(q));
        return (d, root);
    }
    let qb = BigInt::from(q);
    let enc = g.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * &qb + c);
    (d, enc)
}

/// Dedekind's criterion: is `Z[x]/(f)` maximal at `p`?
pub fn dedekind_maximal_at(f: &Poly<BigInt>, p: u64) -> Result<bool> {
    let field = FiniteField::prime(p)?;
    let ring = FfPolyRing::new(&field);
    let fbar = ring.from_int_poly(f);
    let factors = ring.factor(&fbar)?;
    let mut g = ring.one();
    for (h, _) in &factors {
        g = ring.mul(&g, h);
    }
    let h = ring.div_exact(&ring.monic(&fbar), &g);
    if ring.degree(&h) == Some(0) {
        return Ok(true);
    }
    let lift = |a: &FfPoly| Poly::<BigInt>::new(a.iter().map(|c| BigInt::from(c.0[0])).collect());
    let lc = f.leading().unwrap().clone();
    let prod = &(&lift(&g) * &lift(&h)).scale(&lc) - f;
    let pb = BigInt::from(p);
    debug_assert!(prod.coeffs().iter().all(|c| c.is_multiple_of(&pb)));
    let t = prod.map(|c| c / &pb);
    let tbar = ring.from_int_poly(&t);
    let d = ring.gcd(&ring.gcd(&tbar, &g), &h);
    Ok(ring.degree(&d) == Some(0))
}

/// Irreducibility over `Q` from factorization patterns modulo small good primes.
///
/// A prime where `f` stays irreducible settles it. Otherwise the degrees a rational
/// factor could have are intersected across primes; only `{0, n}` surviving certifies
/// irreducibility. Fields whose Galois group has no element acting as an `n`-cycle
/// can exhaust the prime budget without a certificate.
fn certify_irreducible(f: &Poly<BigInt>) -> bool {
    let n = f.degree().unwrap();
    if n == 1 {
        return true;
    }
    let disc = f.discriminant();
    if disc.is_zero() {
        // A repeated factor.
        return false;
    }
    let mut possible: Vec<bool> = vec![true; n + 1];
    let mut tried = 0;
    for p in (2u64..).filter(|&p| is_prime(p)) {
        if tried >= 60 {
            break;
        }
        if disc.is_multiple_of(&BigInt::from(p)) || f.leading().unwrap().is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        tried += 1;
        let Ok(factors) = crate::exactarith::poly_factor_mod_p(f, p) else { continue };
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (g, m) in &factors {
            let d = g.degree().unwrap();
            for _ in 0..*m {
                for s in (d..=n).rev() {
                    if sums[s - d] {
                        sums[s] = true;
                    }
                }
            }
        }
        for (slot, ok) in possible.iter_mut().zip(&sums) {
            *slot &= ok;
        }
        if (1..n).all(|d| !possible[d]) {
            return true;
        }
    }
    false
}
