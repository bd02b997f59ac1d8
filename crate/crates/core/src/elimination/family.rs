//! Two-parameter Frey families loaded from JSON config.

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{count_weierstrass, EllipticCurveNF};
use crate::error::{Error, Result};
use crate::exactarith::intutil::is_prime;
use crate::exactarith::{FfElem, FiniteField};
use crate::jsonint::{self, JsonInt};
use crate::numberfield::{reduce_element, reduce_int, NumberFieldOrder, OrderElement, PrimeIdealData};

/// `c * x^i * y^j` with `c` given by its coordinates in the order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term(pub u32, pub u32, #[serde(with = "jsonint::flat")] pub Vec<BigInt>);

/// `c * x^i * y^j` with a rational integer `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntTerm(pub u32, pub u32, pub JsonInt);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyCoefficients {
    pub a1: Vec<Term>,
    pub a2: Vec<Term>,
    pub a3: Vec<Term>,
    pub a4: Vec<Term>,
    pub a6: Vec<Term>,
}

/// `q mod modulus` must avoid `residues`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Congruence {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Admissibility {
    #[serde(default)]
    pub exclude_primes: Vec<u64>,
    #[serde(default)]
    pub not_congruent: Vec<Congruence>,
}

/// Multiplicative reduction at every prime above `q` iff `q` divides one of the
/// listed integer forms at `(a, b)`; good reduction otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionRule {
    pub multiplicative_if_divides: Vec<Vec<IntTerm>>,
}

/// A member of the family written out as a Weierstrass model, checked on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Specialization {
    pub a: JsonInt,
    pub b: JsonInt,
    #[serde(with = "jsonint::nested")]
    pub model: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyStatus {
    #[default]
    Complete,
    External,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub label: String,
    pub base_field: String,
    #[serde(default)]
    pub status: FamilyStatus,
    #[serde(default)]
    pub coefficients: Option<FamilyCoefficients>,
    #[serde(default)]
    pub admissibility: Admissibility,
    pub reduction_rule: ReductionRule,
    #[serde(default)]
    pub specializations: Vec<Specialization>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Good,
    Multiplicative,
}

/// One residue pair `(a, b) != (0, 0)` modulo `q`, with the traces of the reduced
/// curve at the primes above `q` when the branch is good.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEntry {
    pub a: u64,
    pub b: u64,
    pub branch: Branch,
    pub traces: Vec<i64>,
}

/// Every pair modulo `q`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct PairTable {
    pub q: u64,
    pub primes: Arc<Vec<PrimeIdealData>>,
    pub pairs: Vec<PairEntry>,
}

type PolyTerms = Vec<(u32, u32, OrderElement)>;

#[derive(Clone, Debug)]
pub struct FreyFamily {
    pub file: FamilyFile,
    order: Arc<NumberFieldOrder>,
    coeffs: Option<[PolyTerms; 5]>,
}

fn ff_pow(f: &FiniteField, x: &FfElem, e: u32) -> FfElem {
    f.pow_u64(x, e as u64)
}

/// `(c4, disc)` of a Weierstrass model over a finite field.
fn residue_c4_disc(f: &FiniteField, a: &[FfElem; 5]) -> (FfElem, FfElem) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = f.add(&f.square(a1), &f.scale(a2, 4));
    let b4 = f.add(&f.scale(a4, 2), &f.mul(a1, a3));
    let b6 = f.add(&f.square(a3), &f.scale(a6, 4));
    let b8 = [
        f.mul(&f.square(a1), a6),
        f.scale(&f.mul(a2, a6), 4),
        f.neg(&f.mul(&f.mul(a1, a3), a4)),
        f.mul(a2, &f.square(a3)),
        f.neg(&f.square(a4)),
    ]
    .iter()
    .fold(f.zero(), |acc, t| f.add(&acc, t));
    let c4 = f.sub(&f.square(&b2), &f.scale(&b4, 24));
    let disc = [
        f.neg(&f.mul(&f.square(&b2), &b8)),
        f.neg(&f.scale(&f.mul(&f.square(&b4), &b4), 8)),
        f.neg(&f.scale(&f.square(&b6), 27)),
        f.scale(&f.mul(&f.mul(&b2, &b4), &b6), 9),
    ]
    .iter()
    .fold(f.zero(), |acc, t| f.add(&acc, t));
    (c4, disc)
}

impl FreyFamily {
    pub fn from_file(file: FamilyFile) -> Result<Self> {
        let label = file.label.clone();
        let ctx = |msg: String| Error::Schema(format!("family {label}: {msg}"));
        let order = NumberFieldOrder::builtin(&file.base_field)?;
        let n = order.degree();
        let coeffs = match (&file.coefficients, file.status) {
            (None, FamilyStatus::Complete) => return Err(ctx("a complete family needs coefficients".into())),
            (None, FamilyStatus::External) => None,
            (Some(c), _) => {
                let conv = |terms: &[Term]| -> Result<PolyTerms> {
                    terms
                        .iter()
                        .map(|Term(i, j, c)| {
                            if c.len() > n {
                                return Err(ctx(format!("term coefficient has {} coordinates, degree is {n}", c.len())));
                            }
                            Ok((*i, *j, OrderElement::new(&order, c.clone())))
                        })
                        .collect()
                };
                Some([conv(&c.a1)?, conv(&c.a2)?, conv(&c.a3)?, conv(&c.a4)?, conv(&c.a6)?])
            }
        };
        if file.reduction_rule.multiplicative_if_divides.is_empty() {
            return Err(ctx("reduction rule lists no forms".into()));
        }
        let family = FreyFamily { file, order, coeffs };
        if family.coeffs.is_some() {
            for s in &family.file.specializations {
                if s.model.len() != 5 {
                    return Err(ctx("a specialization model has five coefficients".into()));
                }
                let e = family.specialize(&s.a.0, &s.b.0)?;
                let model: Vec<OrderElement> =
                    s.model.iter().map(|c| OrderElement::new(&family.order, c.clone())).collect();
                if e.coefficients().as_slice() != model.as_slice() {
                    return Err(ctx(format!("specialization at ({}, {}) does not match its model", s.a.0, s.b.0)));
                }
            }
        }
        Ok(family)
    }

    pub fn label(&self) -> &str {
        &self.file.label
    }

    pub fn order(&self) -> &Arc<NumberFieldOrder> {
        &self.order
    }

    pub fn is_external(&self) -> bool {
        self.coeffs.is_none()
    }

    fn coefficients(&self) -> Result<&[PolyTerms; 5]> {
        self.coeffs.as_ref().ok_or_else(|| Error::ExternalData(format!("family {}", self.file.label)))
    }

    pub fn is_admissible(&self, q: u64) -> bool {
        let adm = &self.file.admissibility;
        is_prime(q)
            && !adm.exclude_primes.contains(&q)
            && adm.not_congruent.iter().all(|c| !c.residues.contains(&(q % c.modulus)))
    }

    pub fn check_admissible(&self, q: u64) -> Result<()> {
        if self.is_admissible(q) {
            Ok(())
        } else {
            Err(Error::InadmissiblePrime(q))
        }
    }

    /// Branch of the reduction rule for a pair of residues modulo `q`.
    pub fn branch(&self, q: u64, a: u64, b: u64) -> Branch {
        let f = FiniteField::prime(q).expect("q is prime");
        let (a, b) = (f.from_u64(a), f.from_u64(b));
        let divides = self.file.reduction_rule.multiplicative_if_divides.iter().any(|form| {
            let v = form.iter().fold(f.zero(), |acc, IntTerm(i, j, c)| {
                let t = f.mul(&reduce_int(&f, &c.0), &f.mul(&ff_pow(&f, &a, *i), &ff_pow(&f, &b, *j)));
                f.add(&acc, &t)
            });
            f.is_zero(&v)
        });
        if divides {
            Branch::Multiplicative
        } else {
            Branch::Good
        }
    }

    /// The member at an integer pair `(a, b)`.
    pub fn specialize(&self, a: &BigInt, b: &BigInt) -> Result<EllipticCurveNF> {
        let coeffs = self.coefficients()?;
        let eval = |terms: &PolyTerms| {
            terms.iter().fold(OrderElement::constant(&self.order, BigInt::zero()), |acc, (i, j, c)| {
                let m = a.pow(*i) * b.pow(*j);
                acc + c.clone() * OrderElement::constant(&self.order, m)
            })
        };
        EllipticCurveNF::new(&self.order, coeffs.clone().map(|t| eval(&t)))
    }

    /// Coefficients of the member at `(a, b)` reduced at `p`, where `a, b` are
    /// residues modulo the characteristic.
    pub fn reduced_coefficients(&self, p: &PrimeIdealData, a: u64, b: u64) -> Result<[FfElem; 5]> {
        let f = &p.field;
        let (a, b) = (f.from_u64(a), f.from_u64(b));
        let coeffs = self.coefficients()?;
        Ok(coeffs.clone().map(|terms| {
            terms.iter().fold(f.zero(), |acc, (i, j, c)| {
                let m = f.mul(&ff_pow(f, &a, *i), &ff_pow(f, &b, *j));
                f.add(&acc, &f.mul(&reduce_element(c, p), &m))
            })
        }))
    }

    /// Reduce every pair modulo `q` at every prime above `q`, checking the reduction
    /// rule against the residual discriminant: the good branch needs `disc != 0`,
    /// the multiplicative branch `disc = 0` and `c4 != 0`.
    pub fn pair_table(&self, q: u64) -> Result<PairTable> {
        self.check_admissible(q)?;
        self.coefficients()?;
        let primes = self.order.split_prime(q)?;
        let pairs: Vec<(u64, u64)> =
            (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).filter(|&(a, b)| (a, b) != (0, 0)).collect();
        let entries = pairs
            .par_iter()
            .map(|&(a, b)| -> Result<PairEntry> {
                let branch = self.branch(q, a, b);
                let mut traces = Vec::new();
                for p in primes.iter() {
                    let coeffs = self.reduced_coefficients(p, a, b)?;
                    let (c4, disc) = residue_c4_disc(&p.field, &coeffs);
                    let ok = match branch {
                        Branch::Good => !p.field.is_zero(&disc),
                        Branch::Multiplicative => p.field.is_zero(&disc) && !p.field.is_zero(&c4),
                    };
                    if !ok {
                        return Err(Error::ReductionRuleMismatch { q, a, b });
                    }
                    if branch == Branch::Good {
                        let n = p.norm_u64();
                        traces.push(n as i64 + 1 - count_weierstrass(&p.field, &coeffs)? as i64);
                    }
                }
                Ok(PairEntry { a, b, branch, traces })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PairTable { q, primes, pairs: entries })
    }
}

impl PairTable {
    pub fn good_pairs(&self) -> impl Iterator<Item = &PairEntry> {
        self.pairs.iter().filter(|e| e.branch == Branch::Good)
    }

    pub fn has_multiplicative_pairs(&self) -> bool {
        self.pairs.iter().any(|e| e.branch == Branch::Multiplicative)
    }
}

/// Parse a family config, with line and column on malformed input.
pub fn parse_family(text: &str) -> Result<FreyFamily> {
    let file: FamilyFile = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    FreyFamily::from_file(file)
}

pub fn load_family(path: &Path) -> Result<FreyFamily> {
    let text = std::fs::read_to_string(path)?;
    parse_family(&text).map_err(|e| match e {
        Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}
