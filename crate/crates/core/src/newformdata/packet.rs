//! Hecke eigenvalue packets: schema, validation and residue primes of the
//! coefficient field.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactarith::{FfElem, FfPolyRing, FiniteField, Poly};
use crate::jsonint::JsonInt;
use crate::numberfield::{reduce_int, NumberFieldOrder};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Level {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<JsonInt>,
    #[serde(default)]
    pub primes: Vec<String>,
}

/// Whether the eigenvalue table is complete, or only carries the values some
/// external source printed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PacketStatus {
    #[default]
    Complete,
    Partial,
    External,
}

/// An explicit residue map: the image of the generator of `Q_f` in `F_p[t]/(modulus)`.
/// A bare coordinate list means a degree-1 residue field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResidueMapSpec {
    Root(Vec<u64>),
    Extension {
        modulus: Vec<u64>,
        root: Vec<u64>,
    },
}

/// On-disk form of a packet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketFile {
    pub label: String,
    pub base_field: String,
    #[serde(default)]
    pub level: Level,
    /// `h` with ascending coefficients, monic.
    #[serde(with = "crate::jsonint::flat")]
    pub coeff_poly: Vec<BigInt>,
    #[serde(default, with = "eigen_table")]
    pub eigenvalues: BTreeMap<String, Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub residue_maps: BTreeMap<String, ResidueMapSpec>,
    /// Eigenvalues known only through their reduction, keyed by `"p:idx"` and then by
    /// prime key; values are coordinates in the residue field.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reduced_eigenvalues: BTreeMap<String, BTreeMap<String, Vec<u64>>>,
    #[serde(default)]
    pub status: PacketStatus,
    #[serde(default)]
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

mod eigen_table {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k, v.iter().cloned().map(JsonInt).collect::<Vec<_>>())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<String, Vec<BigInt>>, D::Error> {
        let raw = BTreeMap::<String, Vec<JsonInt>>::deserialize(d)?;
        Ok(raw.into_iter().map(|(k, v)| (k, v.into_iter().map(|x| x.0).collect())).collect())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    Many(Vec<PacketFile>),
    One(Box<PacketFile>),
}

/// A prime of the coefficient field `Q_f = Q[x]/(h)` above `p`, addressed as `"p:idx"`.
#[derive(Clone, Debug)]
pub struct ResiduePrime {
    pub p: u64,
    /// 1-based position in canonical factor order, or the index of an explicit map.
    pub index: usize,
    pub degree: usize,
    /// Multiplicity of the factor of `h mod p`; `None` for explicit maps.
    pub e: Option<usize>,
    pub factor: Option<Poly<BigInt>>,
    pub field: Arc<FiniteField>,
    /// Image of the generator `x` of `Q_f`.
    pub root: FfElem,
}

impl ResiduePrime {
    pub fn key(&self) -> String {
        format!("{}:{}", self.p, self.index)
    }

    pub fn is_ramified(&self) -> bool {
        self.e.is_some_and(|e| e > 1)
    }

    /// Residue of a rational integer.
    pub fn reduce_int(&self, n: i64) -> FfElem {
        self.field.from_i64(n)
    }
}

/// A validated packet.
#[derive(Clone, Debug)]
pub struct NewformPacket {
    pub file: PacketFile,
    pub base: Arc<NumberFieldOrder>,
    pub coeff_field: Arc<NumberFieldOrder>,
    pub warnings: Vec<String>,
}

fn parse_residue_key(key: &str) -> Result<(u64, usize)> {
    let bad = || Error::Schema(format!("bad residue key {key:?}, expected \"p:idx\""));
    let (p, i) = key.split_once(':').ok_or_else(bad)?;
    let p = p.parse().map_err(|_| bad())?;
    let i: usize = i.parse().map_err(|_| bad())?;
    if i == 0 {
        return Err(bad());
    }
    Ok((p, i))
}

impl NewformPacket {
    /// Validate a packet: prime keys resolve in the base field, `h` is monic and
    /// irreducible, explicit maps send `h` to zero, and eigenvalues satisfy the Weil
    /// bound in every real embedding when `h` is totally real.
    pub fn from_file(file: PacketFile) -> Result<Self> {
        let label = file.label.clone();
        let ctx = |msg: String| Error::Schema(format!("packet {label}: {msg}"));
        let base = NumberFieldOrder::builtin(&file.base_field)?;
        let h = Poly::new(file.coeff_poly.clone());
        let coeff_field = Arc::new(
            NumberFieldOrder::new(&format!("Q_{}", file.label), h.clone(), Vec::new())
                .map_err(|e| ctx(format!("coefficient polynomial: {e}")))?,
        );
        let n = coeff_field.degree();
        let mut warnings = Vec::new();
        for key in file.level.primes.iter().chain(file.eigenvalues.keys()) {
            base.prime(key)?;
        }
        if file.eigenvalues.is_empty() {
            warnings.push(format!("packet {} has an empty eigenvalue table; no checks are possible", file.label));
        }
        for (key, v) in &file.eigenvalues {
            if v.len() > n {
                return Err(ctx(format!("eigenvalue at {key} has {} coordinates, degree is {n}", v.len())));
            }
        }
        let packet = NewformPacket { file, base, coeff_field, warnings };
        for (rkey, spec) in &packet.file.residue_maps {
            let (p, _) = parse_residue_key(rkey)?;
            let (field, root) = explicit_residue_field(p, spec).map_err(|e| ctx(format!("residue map {rkey}: {e}")))?;
            let ring = FfPolyRing::new(&field);
            if !field.is_zero(&ring.eval(&ring.from_int_poly(&h), &root)) {
                return Err(ctx(format!("residue map {rkey} does not send h to zero")));
            }
        }
        for (rkey, table) in &packet.file.reduced_eigenvalues {
            parse_residue_key(rkey)?;
            for key in table.keys() {
                packet.base.prime(key)?;
            }
        }
        packet.check_weil()?;
        Ok(packet)
    }

    fn check_weil(&self) -> Result<()> {
        let h = self.coeff_field.poly();
        let Some(roots) = h.all_real_roots() else { return Ok(()) };
        for (key, v) in &self.file.eigenvalues {
            let norm = self.base.prime(key)?.norm_u64();
            let bound = 2.0 * (norm as f64).sqrt();
            for r in &roots {
                let value = v.iter().rev().fold(0.0, |acc, c| acc * r + c.to_string().parse::<f64>().unwrap());
                if value.abs() > bound * (1.0 + 1e-9) {
                    return Err(Error::WeilBound { key: key.clone(), value: format!("{value}"), norm });
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.file.label
    }

    pub fn h(&self) -> &Poly<BigInt> {
        self.coeff_field.poly()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("packet serializes")
    }

    /// Primes of `Q_f` above `p`; explicit maps take precedence over factoring `h`.
    pub fn primes_above_in_qf(&self, p: u64) -> Result<Vec<ResiduePrime>> {
        let mut explicit: Vec<ResiduePrime> = Vec::new();
        for (rkey, spec) in &self.file.residue_maps {
            let (q, index) = parse_residue_key(rkey)?;
            if q != p {
                continue;
            }
            let (field, root) = explicit_residue_field(p, spec)?;
            explicit.push(ResiduePrime {
                p,
                index,
                degree: field.degree(),
                e: None,
                factor: None,
                field: Arc::new(field),
                root,
            });
        }
        if !explicit.is_empty() {
            explicit.sort_by_key(|r| r.index);
            return Ok(explicit);
        }
        let primes = self.coeff_field.split_prime(p).map_err(|e| match e {
            Error::UnsupportedPrime { .. } => Error::UnsupportedResidualPrime { p },
            other => other,
        })?;
        Ok(primes
            .iter()
            .map(|pd| ResiduePrime {
                p,
                index: pd.index,
                degree: pd.fdeg,
                e: Some(pd.e),
                factor: Some(pd.factor.clone()),
                field: pd.field.clone(),
                root: pd.theta.clone(),
            })
            .collect())
    }

    /// Image of `a_q(f)` in the residue field of `rp`, falling back to stored residues.
    pub fn reduce_eigenvalue(&self, key: &str, rp: &ResiduePrime) -> Result<FfElem> {
        if let Some(v) = self.file.eigenvalues.get(key) {
            let f = &rp.field;
            return Ok(v.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, &rp.root), &reduce_int(f, c))));
        }
        if let Some(r) = self.file.reduced_eigenvalues.get(&rp.key()).and_then(|t| t.get(key)) {
            return Ok(rp.field.from_coeffs(r));
        }
        Err(Error::MissingEigenvalue(key.to_string()))
    }

    /// Keys at which a value (exact or reduced at `rp`) is available.
    pub fn keys_with_values(&self, rp: &ResiduePrime) -> Vec<String> {
        let mut keys: Vec<String> = self.file.eigenvalues.keys().cloned().collect();
        if let Some(t) = self.file.reduced_eigenvalues.get(&rp.key()) {
            keys.extend(t.keys().filter(|k| !self.file.eigenvalues.contains_key(*k)).cloned());
        }
        keys.sort();
        keys
    }
}

fn explicit_residue_field(p: u64, spec: &ResidueMapSpec) -> Result<(FiniteField, FfElem)> {
    match spec {
        ResidueMapSpec::Root(r) => {
            if r.len() != 1 {
                return Err(Error::Schema("a bare residue map must give one root coordinate".into()));
            }
            let f = FiniteField::prime(p)?;
            let root = f.from_u64(r[0]);
            Ok((f, root))
        }
        ResidueMapSpec::Extension { modulus, root } => {
            let f = FiniteField::extension(p, modulus)?;
            if root.len() > f.degree() {
                return Err(Error::Schema("residue map root has too many coordinates".into()));
            }
            let r = f.from_coeffs(root);
            Ok((f, r))
        }
    }
}

/// Parse one packet or a list of packets, with line and column on malformed input.
pub fn parse_packets(text: &str) -> Result<Vec<NewformPacket>> {
    let raw: OneOrMany = serde_json::from_str(text).map_err(|e| {
        // Untagged enums lose the inner position; reparse as a list to recover it.
        let detail = serde_json::from_str::<Vec<PacketFile>>(text)
            .err()
            .filter(|_| text.trim_start().starts_with('['))
            .or_else(|| serde_json::from_str::<PacketFile>(text).err())
            .unwrap_or(e);
        Error::Schema(format!("line {}, column {}: {detail}", detail.line(), detail.column()))
    })?;
    let files = match raw {
        OneOrMany::Many(v) => v,
        OneOrMany::One(f) => vec![*f],
    };
    files.into_iter().map(NewformPacket::from_file).collect()
}

pub fn load_packets(path: &Path) -> Result<Vec<NewformPacket>> {
    let text = std::fs::read_to_string(path)?;
    parse_packets(&text).map_err(|e| match e {
        Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}
