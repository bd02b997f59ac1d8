//! `B_q`, `A_q`, standard elimination and refined per-prime elimination.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::family::{Branch, FreyFamily, PairEntry, PairTable};
use crate::error::{Error, Result};
use crate::newformdata::{NewformPacket, ResiduePrime};
use crate::numberfield::{element_norm, OrderElement};

/// Exact eigenvalue `a_q(f)` as an element of `Z[x]/(h)`.
fn eigenvalue(packet: &NewformPacket, key: &str) -> Result<OrderElement> {
    let v = packet.file.eigenvalues.get(key).ok_or_else(|| Error::MissingEigenvalue(key.to_string()))?;
    Ok(OrderElement::new(&packet.coeff_field, v.clone()))
}

fn constant(packet: &NewformPacket, c: i64) -> OrderElement {
    OrderElement::constant(&packet.coeff_field, BigInt::from(c))
}

fn check_compatible(packet: &NewformPacket, table: &PairTable) -> Result<()> {
    if packet.base.label() != table.primes[0].order_label {
        return Err(Error::Schema(format!(
            "packet {} is over {}, the family is over {}",
            packet.label(),
            packet.base.label(),
            table.primes[0].order_label
        )));
    }
    for p in table.primes.iter() {
        if packet.file.level.primes.contains(&p.key()) {
            return Err(Error::LevelPrime { q: table.q, packet: packet.label().to_string() });
        }
    }
    Ok(())
}

/// `gcd { |Norm(a_q(E_ab) - a_q(f))| : q | q }` for a pair in the good branch.
pub fn b_q(packet: &NewformPacket, table: &PairTable, pair: &PairEntry) -> Result<BigInt> {
    if pair.branch != Branch::Good {
        return Err(Error::BadReduction(format!("pair ({}, {}) mod {}", pair.a, pair.b, table.q)));
    }
    check_compatible(packet, table)?;
    let mut g = BigInt::zero();
    for (p, &t) in table.primes.iter().zip(&pair.traces) {
        let diff = constant(packet, t) - eigenvalue(packet, &p.key())?;
        g = g.gcd(&element_norm(&diff));
    }
    Ok(g)
}

/// `A_q(f)` with the prime divisors of each nonzero factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AqValue {
    pub q: u64,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
    pub good_pairs: usize,
    pub multiplicative_pairs: usize,
    /// Distinct primes dividing the value; empty when the value is zero.
    pub prime_divisors: Vec<u128>,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn prime_divisors(n: &BigInt) -> Result<Vec<u128>> {
    let m = n.abs().to_u128().ok_or_else(|| Error::FactorTooLarge(n.to_string()))?;
    Ok(num_prime::nt_funcs::factorize128(m).into_keys().collect())
}

/// `q * prod_{good pairs} B_q * prod_{q | q} Norm(a_q(f)^2 - (N q + 1)^2)`.
///
/// The first product runs over the pairs in the good branch; the second is always
/// present, so a packet with `a_q(f) = +-(N q + 1)` gets `A_q = 0`.
pub fn a_q(packet: &NewformPacket, table: &PairTable) -> Result<AqValue> {
    check_compatible(packet, table)?;
    let mut factors: Vec<BigInt> = vec![BigInt::from(table.q)];
    let mut good_pairs = 0;
    for pair in table.good_pairs() {
        good_pairs += 1;
        factors.push(b_q(packet, table, pair)?);
    }
    for p in table.primes.iter() {
        let a = eigenvalue(packet, &p.key())?;
        let n1 = constant(packet, p.norm_u64() as i64 + 1);
        factors.push(element_norm(&(a.clone() * a - n1.clone() * n1)));
    }
    let multiplicative_pairs = table.pairs.len() - good_pairs;
    if factors.iter().any(|f| f.is_zero()) {
        return Ok(AqValue { q: table.q, value: BigInt::zero(), good_pairs, multiplicative_pairs, prime_divisors: vec![] });
    }
    let mut primes = BTreeSet::new();
    for f in &factors {
        primes.extend(prime_divisors(f)?);
    }
    let value = factors.iter().fold(BigInt::from(1), |acc, f| acc * f.abs());
    Ok(AqValue { q: table.q, value, good_pairs, multiplicative_pairs, prime_divisors: primes.into_iter().collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "primes")]
pub enum SurvivingSet {
    /// Every `A_q` was zero.
    All,
    Primes(Vec<u128>),
}

impl SurvivingSet {
    pub fn contains(&self, p: u128) -> bool {
        match self {
            SurvivingSet::All => true,
            SurvivingSet::Primes(v) => v.contains(&p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PacketElimination {
    pub packet: String,
    pub a_q: Vec<AqValue>,
    #[serde(serialize_with = "as_string")]
    pub gcd: BigInt,
    pub surviving: SurvivingSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum RefinedVerdict {
    Eliminated { witness_q: u64 },
    Survives,
    SkippedReducible,
    SkippedRamified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueVerdict {
    pub residue_prime: String,
    pub verdict: RefinedVerdict,
    /// Number of pairs modulo each `q` that pass congruence (i) or (ii).
    pub passing_pairs: BTreeMap<u64, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedReport {
    pub packet: String,
    pub p: u64,
    pub verdicts: Vec<ResidueVerdict>,
}

impl RefinedReport {
    /// True when no prime above `p` survives.
    pub fn eliminated(&self) -> bool {
        self.verdicts.iter().all(|v| v.verdict != RefinedVerdict::Survives)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RefinedRequest {
    pub p: u64,
    /// Residue keys `"p:idx"` known to be reducible.
    pub skip: Vec<String>,
    pub skip_ramified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationReport {
    pub family: String,
    pub q_list: Vec<u64>,
    pub packets: Vec<PacketElimination>,
    pub refined: Vec<RefinedReport>,
}

fn sorted_q_list(q_list: &[u64]) -> Result<Vec<u64>> {
    if q_list.is_empty() {
        return Err(Error::EmptyPrimeList);
    }
    let mut qs = q_list.to_vec();
    qs.sort_unstable();
    qs.dedup();
    Ok(qs)
}

/// Pair tables for each `q`, computed in parallel.
pub fn pair_tables(family: &FreyFamily, q_list: &[u64]) -> Result<Vec<PairTable>> {
    let qs = sorted_q_list(q_list)?;
    for &q in &qs {
        family.check_admissible(q)?;
    }
    qs.par_iter().map(|&q| family.pair_table(q)).collect()
}

fn standard_from_tables(packet: &NewformPacket, tables: &[PairTable]) -> Result<PacketElimination> {
    let a_q = tables.iter().map(|t| a_q(packet, t)).collect::<Result<Vec<_>>>()?;
    let gcd = a_q.iter().fold(BigInt::zero(), |g, a| g.gcd(&a.value));
    let surviving = if gcd.is_zero() {
        SurvivingSet::All
    } else {
        let mut common: Option<BTreeSet<u128>> = None;
        for a in a_q.iter().filter(|a| !a.value.is_zero()) {
            let s: BTreeSet<u128> = a.prime_divisors.iter().copied().collect();
            common = Some(match common {
                None => s,
                Some(c) => c.intersection(&s).copied().collect(),
            });
        }
        SurvivingSet::Primes(common.unwrap_or_default().into_iter().collect())
    };
    Ok(PacketElimination { packet: packet.label().to_string(), a_q, gcd, surviving })
}

/// Refined verdicts at every prime of `Q_f` above `req.p`, from precomputed tables.
pub fn refined_from_tables(packet: &NewformPacket, tables: &[PairTable], req: &RefinedRequest) -> Result<RefinedReport> {
    for t in tables {
        check_compatible(packet, t)?;
    }
    let mut verdicts = Vec::new();
    for rp in packet.primes_above_in_qf(req.p)? {
        let key = rp.key();
        if req.skip.contains(&key) {
            verdicts.push(ResidueVerdict { residue_prime: key, verdict: RefinedVerdict::SkippedReducible, passing_pairs: BTreeMap::new() });
            continue;
        }
        if req.skip_ramified && rp.is_ramified() {
            verdicts.push(ResidueVerdict { residue_prime: key, verdict: RefinedVerdict::SkippedRamified, passing_pairs: BTreeMap::new() });
            continue;
        }
        let mut passing_pairs = BTreeMap::new();
        let mut witness = None;
        // q = p gives no congruence between traces.
        for t in tables.iter().filter(|t| t.q != req.p) {
            let n = passing_pair_count(packet, t, &rp)?;
            passing_pairs.insert(t.q, n);
            if n == 0 && witness.is_none() {
                witness = Some(t.q);
            }
        }
        let verdict = match witness {
            Some(q) => RefinedVerdict::Eliminated { witness_q: q },
            None => RefinedVerdict::Survives,
        };
        verdicts.push(ResidueVerdict { residue_prime: key, verdict, passing_pairs });
    }
    Ok(RefinedReport { packet: packet.label().to_string(), p: req.p, verdicts })
}

/// Pairs for which congruence (i) (good branch) or (ii) (multiplicative branch)
/// holds at every prime above `q`.
pub fn passing_pair_count(packet: &NewformPacket, table: &PairTable, rp: &ResiduePrime) -> Result<usize> {
    let f = &rp.field;
    let residues = table
        .primes
        .iter()
        .map(|p| packet.reduce_eigenvalue(&p.key(), rp))
        .collect::<Result<Vec<_>>>()?;
    let plus: Vec<_> = table.primes.iter().map(|p| rp.reduce_int(p.norm_u64() as i64 + 1)).collect();
    let mult_ok = residues.iter().zip(&plus).all(|(r, s)| r == s || *r == f.neg(s));
    Ok(table
        .pairs
        .iter()
        .filter(|pair| match pair.branch {
            Branch::Good => residues.iter().zip(&pair.traces).all(|(r, &t)| *r == rp.reduce_int(t)),
            Branch::Multiplicative => mult_ok,
        })
        .count())
}

/// `B_q`, `A_q` and the surviving exponents for each packet.
pub fn standard_eliminate(packets: &[NewformPacket], family: &FreyFamily, q_list: &[u64]) -> Result<EliminationReport> {
    eliminate(packets, family, q_list, None)
}

/// Refined elimination for one packet.
pub fn refined_eliminate(
    packet: &NewformPacket,
    family: &FreyFamily,
    q_list: &[u64],
    req: &RefinedRequest,
) -> Result<RefinedReport> {
    let tables = pair_tables(family, q_list)?;
    refined_from_tables(packet, &tables, req)
}

/// Standard elimination for every packet and, when requested, refined elimination at
/// one exponent. Output is ordered by packet label.
pub fn eliminate(
    packets: &[NewformPacket],
    family: &FreyFamily,
    q_list: &[u64],
    refined: Option<&RefinedRequest>,
) -> Result<EliminationReport> {
    let tables = pair_tables(family, q_list)?;
    let mut order: Vec<&NewformPacket> = packets.iter().collect();
    order.sort_by(|a, b| a.label().cmp(b.label()));
    let standard =
        order.par_iter().map(|p| standard_from_tables(p, &tables)).collect::<Result<Vec<_>>>()?;
    let refined = match refined {
        Some(req) => order.par_iter().map(|p| refined_from_tables(p, &tables, req)).collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok(EliminationReport {
        family: family.label().to_string(),
        q_list: tables.iter().map(|t| t.q).collect(),
        packets: standard,
        refined,
    })
}
