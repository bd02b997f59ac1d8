//! Local constraints on `(a, b) mod q` and their JSON form.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curves::{g2_rm_split, load_curve, rm_reduce_mod_p7, CurveModel, HyperellipticCurveNF};
use crate::elimination::{load_family, Branch, FreyFamily};
use crate::error::{Error, Result};
use crate::exactarith::intutil::is_prime;

use super::character::ELL;

#[derive(Clone, Debug)]
pub enum ConstraintMode {
    /// `a + b` odd; only at `q = 2`.
    ParityOdd,
    /// `a + b` even; only at `q = 2`.
    ParityEven,
    Unconstrained,
    Explicit(Vec<(u64, u64)>),
    /// Pairs compatible with a mod-7 congruence between the family and a form `g`,
    /// given by the residue sets of `g` at each prime above `q` of the family's field.
    Modular { family: Arc<FreyFamily>, target: BTreeMap<String, Vec<u64>> },
}

#[derive(Clone, Debug)]
pub struct SieveConstraint {
    pub q: u64,
    pub mode: ConstraintMode,
}

impl SieveConstraint {
    pub fn new(q: u64, mode: ConstraintMode) -> Result<Self> {
        let c = SieveConstraint { q, mode };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.q;
        let bad = |m: String| Err(Error::InvalidConstraint(m));
        if !is_prime(q) {
            return bad(format!("{q} is not prime"));
        }
        if q == 13 {
            return bad("q = 13 is not allowed".into());
        }
        match &self.mode {
            ConstraintMode::ParityOdd | ConstraintMode::ParityEven if q != 2 => {
                bad(format!("parity constraints apply only at q = 2, not {q}"))
            }
            ConstraintMode::Explicit(pairs) => {
                if let Some(p) = pairs.iter().find(|&&(a, b)| a >= q || b >= q || (a, b) == (0, 0)) {
                    return bad(format!("pair {p:?} is not a nonzero residue pair mod {q}"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self.mode {
            ConstraintMode::ParityOdd => "parity-odd",
            ConstraintMode::ParityEven => "parity-even",
            ConstraintMode::Unconstrained => "unconstrained",
            ConstraintMode::Explicit(_) => "explicit",
            ConstraintMode::Modular { .. } => "modular",
        }
    }

    /// The nonzero pairs `(a, b)` mod `q` allowed by the constraint, sorted.
    pub fn admissible_pairs(&self) -> Result<Vec<(u64, u64)>> {
        self.validate()?;
        let q = self.q;
        let all = || (0..q).flat_map(move |a| (0..q).map(move |b| (a, b))).filter(|&p| p != (0, 0));
        let mut pairs: Vec<(u64, u64)> = match &self.mode {
            ConstraintMode::ParityOdd => all().filter(|(a, b)| (a + b) % 2 == 1).collect(),
            ConstraintMode::ParityEven => all().filter(|(a, b)| (a + b) % 2 == 0).collect(),
            ConstraintMode::Unconstrained => all().collect(),
            ConstraintMode::Explicit(v) => v.clone(),
            ConstraintMode::Modular { family, target } => modular_pairs(family, target, q)?,
        };
        pairs.sort_unstable();
        pairs.dedup();
        Ok(pairs)
    }
}

fn modular_pairs(family: &FreyFamily, target: &BTreeMap<String, Vec<u64>>, q: u64) -> Result<Vec<(u64, u64)>> {
    let table = family.pair_table(q)?;
    let sets = table
        .primes
        .iter()
        .map(|p| {
            target
                .get(&p.key())
                .map(|v| v.iter().map(|r| r % ELL).collect::<BTreeSet<u64>>())
                .ok_or_else(|| Error::InvalidConstraint(format!("no residue set for {} at q = {q}", p.key())))
        })
        .collect::<Result<Vec<_>>>()?;
    let ell = ELL as i64;
    Ok(table
        .pairs
        .iter()
        .filter(|pair| match pair.branch {
            Branch::Good => pair.traces.iter().zip(&sets).all(|(t, s)| s.contains(&(t.rem_euclid(ell) as u64))),
            Branch::Multiplicative => table.primes.iter().zip(&sets).all(|(p, s)| {
                let n1 = (p.norm_u64() + 1) % ELL;
                s.contains(&n1) || s.contains(&((ELL - n1) % ELL))
            }),
        })
        .map(|pair| (pair.a, pair.b))
        .collect())
}

/// Residues modulo `p7 = (3 + sqrt 2)` of the RM-split Euler factor roots of `curve`
/// at every prime above `q`, keyed by prime.
pub fn rm_residue_sets(curve: &HyperellipticCurveNF, q: u64) -> Result<BTreeMap<String, Vec<u64>>> {
    let mut out = BTreeMap::new();
    for p in curve.order().split_prime(q)?.iter() {
        let split = g2_rm_split(&curve.euler_factor(p)?)?;
        let mut r: Vec<u64> = split.elements().iter().map(|x| rm_reduce_mod_p7(x)).collect();
        r.sort_unstable();
        r.dedup();
        out.insert(p.key(), r);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ModeName {
    ParityOdd,
    ParityEven,
    Unconstrained,
    Explicit,
    Modular,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintEntry {
    q: u64,
    mode: ModeName,
    #[serde(default)]
    pairs: Option<Vec<[u64; 2]>>,
    /// Path of a family config, relative to the constraints file.
    #[serde(default)]
    family: Option<String>,
    /// Path of a genus-2 curve file whose RM-split Euler factors give the residue sets.
    #[serde(default)]
    target_curve: Option<String>,
    #[serde(default)]
    target: Option<BTreeMap<String, Vec<u64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintsFile {
    constraints: Vec<ConstraintEntry>,
    #[serde(default)]
    #[allow(dead_code)]
    notes: Option<String>,
}

/// Load a constraints file; family and curve paths resolve against its directory.
pub fn load_constraints(path: &Path) -> Result<Vec<SieveConstraint>> {
    let text = std::fs::read_to_string(path)?;
    let file: ConstraintsFile = serde_json::from_str(&text).map_err(|e| {
        Error::Schema(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
    })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut families: BTreeMap<String, Arc<FreyFamily>> = BTreeMap::new();
    let mut out = Vec::new();
    for entry in file.constraints {
        let need = |what: &str| Error::InvalidConstraint(format!("q = {}: {what} is required", entry.q));
        let mode = match entry.mode {
            ModeName::ParityOdd => ConstraintMode::ParityOdd,
            ModeName::ParityEven => ConstraintMode::ParityEven,
            ModeName::Unconstrained => ConstraintMode::Unconstrained,
            ModeName::Explicit => ConstraintMode::Explicit(
                entry.pairs.as_ref().ok_or_else(|| need("pairs"))?.iter().map(|[a, b]| (*a, *b)).collect(),
            ),
            ModeName::Modular => {
                let rel = entry.family.as_ref().ok_or_else(|| need("family"))?;
                let family = match families.get(rel) {
                    Some(f) => f.clone(),
                    None => {
                        let f = Arc::new(load_family(&dir.join(rel))?);
                        families.insert(rel.clone(), f.clone());
                        f
                    }
                };
                let target = match (&entry.target, &entry.target_curve) {
                    (Some(t), _) => t.clone(),
                    (None, Some(c)) => match load_curve(&dir.join(c))?.1 {
                        CurveModel::Hyperelliptic(curve) => rm_residue_sets(&curve, entry.q)?,
                        CurveModel::Elliptic(_) => {
                            return Err(Error::InvalidConstraint(format!("{c} is not a genus-2 curve")))
                        }
                    },
                    (None, None) => return Err(need("target or target_curve")),
                };
                ConstraintMode::Modular { family, target }
            }
        };
        out.push(SieveConstraint::new(entry.q, mode)?);
    }
    Ok(out)
}
