//! Congruence checks on eigenvalue packets.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::packet::{Level, NewformPacket, PacketFile, PacketStatus, ResiduePrime};
use crate::curves::EllipticCurveNF;
use crate::error::{Error, Result};
use crate::exactarith::FfElem;
use crate::jsonint::JsonInt;
use crate::numberfield::{automorphisms, prime_permutation, NumberFieldOrder, OrderElement};

/// Keys `q` where `a_{sigma(q)}(f) != a_q(f)` modulo `p0`.
///
/// Every key with a value must have its image in `sigma_map`, and the image must
/// carry a value too.
pub fn conjugate_congruence_check(
    packet: &NewformPacket,
    sigma_map: &BTreeMap<String, String>,
    p0: &ResiduePrime,
) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for key in packet.keys_with_values(p0) {
        let image = sigma_map.get(&key).ok_or_else(|| Error::MissingPermutedKey(key.clone()))?;
        let a = packet.reduce_eigenvalue(&key, p0)?;
        let b = packet.reduce_eigenvalue(image, p0).map_err(|e| match e {
            Error::MissingEigenvalue(k) => Error::MissingPermutedKey(k),
            other => other,
        })?;
        if a != b {
            failures.push(key);
        }
    }
    Ok(failures)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContradictionReport {
    pub residue_prime: String,
    pub target: Vec<u64>,
    /// `(key, residue)` at each requested key.
    pub observed: Vec<(String, Vec<u64>)>,
    pub contradiction: bool,
}

/// True iff the eigenvalue at some key reduces to something other than `target`.
pub fn trace_contradiction_check(
    packet: &NewformPacket,
    rp: &ResiduePrime,
    keys: &[String],
    target: &FfElem,
) -> Result<bool> {
    Ok(trace_contradiction_report(packet, rp, keys, target)?.contradiction)
}

pub fn trace_contradiction_report(
    packet: &NewformPacket,
    rp: &ResiduePrime,
    keys: &[String],
    target: &FfElem,
) -> Result<ContradictionReport> {
    if keys.is_empty() {
        return Err(Error::MissingEigenvalue("(no keys requested)".into()));
    }
    let mut observed = Vec::new();
    let mut contradiction = false;
    for key in keys {
        let r = packet.reduce_eigenvalue(key, rp)?;
        contradiction |= &r != target;
        observed.push((key.clone(), r.coeffs().to_vec()));
    }
    Ok(ContradictionReport { residue_prime: rp.key(), target: target.coeffs().to_vec(), observed, contradiction })
}

/// The action of every automorphism of `order` on the primes above each `q`, merged
/// into one key map per automorphism (identity included, first).
pub fn galois_prime_maps(order: &Arc<NumberFieldOrder>, qs: &[u64]) -> Result<Vec<BTreeMap<String, String>>> {
    let mut maps = Vec::new();
    let mut autos = automorphisms(order)?;
    let identity = OrderElement::theta(order);
    autos.sort_by_key(|s| *s != identity);
    for sigma in &autos {
        let mut m = BTreeMap::new();
        for &q in qs {
            m.extend(prime_permutation(order, sigma, q)?);
        }
        maps.push(m);
    }
    Ok(maps)
}

/// A packet with rational eigenvalues (`h = x`) from the traces of `e` at the good
/// primes of norm at most `bound`. Bad primes go into the level's prime list.
pub fn packet_from_elliptic_curve(e: &EllipticCurveNF, label: &str, bound: u64) -> Result<NewformPacket> {
    let mut eigenvalues = BTreeMap::new();
    let mut bad = Vec::new();
    for (p, t) in e.traces_up_to(bound)? {
        match t {
            Ok(a) => {
                eigenvalues.insert(p.key(), vec![BigInt::from(a)]);
            }
            Err(Error::BadReduction(_)) => bad.push(p.key()),
            Err(other) => return Err(other),
        }
    }
    let file = PacketFile {
        label: label.to_string(),
        base_field: e.order().label().to_string(),
        level: Level { norm: None::<JsonInt>, primes: bad },
        coeff_poly: vec![BigInt::from(0), BigInt::from(1)],
        eigenvalues,
        residue_maps: BTreeMap::new(),
        reduced_eigenvalues: BTreeMap::new(),
        status: PacketStatus::Complete,
        provenance: format!("point counts of {label} up to norm {bound}"),
        notes: None,
    };
    NewformPacket::from_file(file)
}
