//! Sieve for the unit classes `u = prod u_a^{e_a}` mod seventh powers.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactarith::FfElem;

use super::character::{tables_above, CharValue, LocalCharacterTable, ELL, RANK};
use super::constraints::SieveConstraint;
use super::linalg::solve_affine;

/// Number of classes, `7^5`.
pub const CLASS_COUNT: usize = 16807;

const MAGIC: &[u8; 4] = b"USV1";

/// Whether `13` divides `a + b`; in the `Divisible13` case `a + zeta b` carries one factor `(1 - zeta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DescentCase {
    Coprime13,
    Divisible13,
}

impl DescentCase {
    pub fn delta(self) -> u8 {
        match self {
            DescentCase::Coprime13 => 0,
            DescentCase::Divisible13 => 1,
        }
    }
}

/// Exponent vector `(e_2, .., e_6)` to index `sum e_a 7^(a-2)`.
pub fn class_index(e: &[u8; RANK]) -> usize {
    e.iter().rev().fold(0, |acc, &x| acc * ELL as usize + x as usize)
}

pub fn class_vector(mut idx: usize) -> [u8; RANK] {
    let mut e = [0u8; RANK];
    for x in e.iter_mut() {
        *x = (idx % ELL as usize) as u8;
        idx /= ELL as usize;
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivors {
    bits: FixedBitSet,
}

impl Survivors {
    pub fn empty() -> Self {
        Survivors { bits: FixedBitSet::with_capacity(CLASS_COUNT) }
    }

    pub fn full() -> Self {
        let mut s = Self::empty();
        s.bits.insert_range(..);
        s
    }

    pub fn insert(&mut self, idx: usize) {
        self.bits.insert(idx);
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.bits.contains(idx)
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn intersect_with(&mut self, other: &Survivors) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn is_subset(&self, other: &Survivors) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// `USV1`, count as u32 LE, then one bit per class, least significant bit first.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + CLASS_COUNT.div_ceil(8));
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(self.count() as u32).to_le_bytes());
        let mut body = vec![0u8; CLASS_COUNT.div_ceil(8)];
        for i in self.indices() {
            body[i / 8] |= 1 << (i % 8);
        }
        out.extend(body);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |m: &str| Err(Error::Schema(format!("survivor file: {m}")));
        if bytes.len() != 8 + CLASS_COUNT.div_ceil(8) {
            return bad("wrong length");
        }
        if &bytes[..4] != MAGIC {
            return bad("bad magic");
        }
        let mut s = Self::empty();
        for i in 0..CLASS_COUNT {
            if bytes[8 + i / 8] >> (i % 8) & 1 == 1 {
                s.insert(i);
            }
        }
        let count = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
        if count != s.count() {
            return bad("count does not match bitmap");
        }
        Ok(s)
    }

    /// Count and the first `limit` classes as exponent vectors.
    pub fn summary(&self, limit: usize) -> String {
        let first: Vec<String> = self
            .indices()
            .take(limit)
            .map(|i| {
                let e = class_vector(i);
                format!("({})", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            })
            .collect();
        format!("survivors: {}\nfirst: {}", self.count(), first.join(" "))
    }
}

/// Classes admitted by at least one pair: `sum e_a chi_Q(u_a) = chi_Q(a + zeta b) - delta chi_Q(1 - zeta)`
/// at every `Q` where `a + zeta b` is a unit.
pub fn local_survivors(case: DescentCase, pairs: &[(u64, u64)], tables: &[LocalCharacterTable]) -> Survivors {
    let delta = case.delta();
    let mut out = Survivors::empty();
    for &(a, b) in pairs {
        let mut system = Vec::with_capacity(tables.len());
        for t in tables {
            if let CharValue::Value(v) = t.pair_value(a, b) {
                let shift = delta * t.one_minus_zeta.expect("q != 13");
                system.push((t.units, (v + ELL as u8 - shift % ELL as u8) % ELL as u8));
            }
        }
        if system.is_empty() {
            return Survivors::full();
        }
        if let Some(space) = solve_affine(&system) {
            for e in space.points() {
                out.insert(class_index(&e));
            }
        }
    }
    out
}

/// Same set as `local_survivors`, by testing each class directly: `w / eps_e` is a
/// seventh power in `F_Q^*` iff `w^k = eps_e^k` with `k = (N-1)/7`.
pub fn local_survivors_exhaustive(case: DescentCase, pairs: &[(u64, u64)], tables: &[LocalCharacterTable]) -> Survivors {
    let per_prime: Vec<(Vec<FfElem>, FfElem)> = tables
        .iter()
        .map(|t| {
            let f = &t.prime.field;
            let unit_powers: Vec<FfElem> = crate::numberfield::cyclotomic_unit_generators()
                .iter()
                .map(|u| f.pow(&crate::numberfield::reduce_element(u, &t.prime), &t.exponent))
                .collect();
            let omz = f.pow(&crate::numberfield::reduce_element(&super::character::one_minus_zeta(), &t.prime), &t.exponent);
            (unit_powers, omz)
        })
        .collect();
    // Per pair: the k-th power of (a + zeta b)(1 - zeta)^(-delta) at each Q, or None where it vanishes.
    let targets: Vec<Vec<Option<FfElem>>> = pairs
        .iter()
        .map(|&(a, b)| {
            tables
                .iter()
                .zip(&per_prime)
                .map(|(t, (_, omz))| {
                    let f = &t.prime.field;
                    let z = f.add(&f.from_u64(a), &f.mul(&f.from_u64(b), &t.prime.theta));
                    if f.is_zero(&z) {
                        return None;
                    }
                    let w = f.pow(&z, &t.exponent);
                    Some(match case {
                        DescentCase::Coprime13 => w,
                        DescentCase::Divisible13 => f.mul(&w, &f.inv(omz).expect("1 - zeta is a unit away from 13")),
                    })
                })
                .collect()
        })
        .collect();
    let hits: Vec<usize> = (0..CLASS_COUNT)
        .into_par_iter()
        .filter(|&idx| {
            let e = class_vector(idx);
            let eps: Vec<FfElem> = tables
                .iter()
                .zip(&per_prime)
                .map(|(t, (units, _))| {
                    let f = &t.prime.field;
                    units.iter().zip(&e).fold(f.one(), |acc, (u, &k)| f.mul(&acc, &f.pow_u64(u, k as u64)))
                })
                .collect();
            targets.iter().any(|row| row.iter().zip(&eps).all(|(w, x)| w.as_ref().is_none_or(|w| w == x)))
        })
        .collect();
    let mut out = Survivors::empty();
    for i in hits {
        out.insert(i);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalSieve {
    pub q: u64,
    pub mode: &'static str,
    pub admissible_pairs: usize,
    pub character_primes: Vec<String>,
    pub survivors: usize,
}

#[derive(Clone, Debug)]
pub struct SieveOutcome {
    pub case: DescentCase,
    pub locals: Vec<LocalSieve>,
    pub survivors: Survivors,
}

/// Intersect the local survivor sets over all constraints.
pub fn sieve_case(case: DescentCase, constraints: &[SieveConstraint]) -> Result<SieveOutcome> {
    if constraints.is_empty() {
        return Err(Error::InvalidConstraint("no constraints given".into()));
    }
    let mut qs: Vec<u64> = constraints.iter().map(|c| c.q).collect();
    qs.sort_unstable();
    if let Some(w) = qs.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidConstraint(format!("q = {} appears twice", w[0])));
    }
    let locals: Vec<(LocalSieve, Survivors)> = constraints
        .par_iter()
        .map(|c| {
            let pairs = c.admissible_pairs()?;
            let tables = tables_above(c.q)?;
            let survivors = local_survivors(case, &pairs, &tables);
            let info = LocalSieve {
                q: c.q,
                mode: c.mode_name(),
                admissible_pairs: pairs.len(),
                character_primes: tables.iter().map(|t| t.key()).collect(),
                survivors: survivors.count(),
            };
            Ok((info, survivors))
        })
        .collect::<Result<_>>()?;
    let mut all = Survivors::full();
    for (_, s) in &locals {
        all.intersect_with(s);
    }
    let mut locals: Vec<LocalSieve> = locals.into_iter().map(|(l, _)| l).collect();
    locals.sort_by_key(|l| l.q);
    Ok(SieveOutcome { case, locals, survivors: all })
}
