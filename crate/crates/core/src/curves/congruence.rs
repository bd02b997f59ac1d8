//! Residual congruence between an elliptic curve and a genus-2 curve with real
//! multiplication by `Z[sqrt 2]`, tested prime by prime.

use serde::Serialize;

use super::hyperelliptic::{g2_rm_split, rm_reduce_mod_p7};
use super::{EllipticCurveNF, HyperellipticCurveNF};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PrimeVerdict {
    Match { a_e: i64, residues: [u64; 2] },
    Mismatch { a_e: i64, residues: [u64; 2] },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub key: String,
    pub norm: u64,
    #[serde(flatten)]
    pub verdict: PrimeVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub bound: u64,
    pub excluded_characteristics: Vec<u64>,
    pub checks: Vec<PrimeCheck>,
}

impl CongruenceReport {
    pub fn failures(&self) -> Vec<&PrimeCheck> {
        self.checks.iter().filter(|c| !matches!(c.verdict, PrimeVerdict::Match { .. })).collect()
    }
}

/// For every prime of norm at most `bound` whose characteristic is not in `exclude`,
/// checks that `a_P(E) mod 7` is one of the two reductions of `C`'s RM pair modulo
/// the prime `(3 + sqrt 2)`.
pub fn check_congruence(
    e: &EllipticCurveNF,
    c: &HyperellipticCurveNF,
    bound: u64,
    exclude: &[u64],
) -> Result<CongruenceReport> {
    if e.order().label() != c.order().label() {
        return Err(Error::Schema(format!(
            "curves are over different orders ({} and {})",
            e.order().label(),
            c.order().label()
        )));
    }
    let primes: Vec<_> =
        e.order().primes_up_to_norm(bound)?.into_iter().filter(|p| !exclude.contains(&p.q)).collect();
    use rayon::prelude::*;
    let checks = primes
        .par_iter()
        .map(|p| {
            let verdict = (|| -> Result<PrimeVerdict> {
                let a_e = e.trace(p)?;
                let split = g2_rm_split(&c.euler_factor(p)?)?;
                let residues = [rm_reduce_mod_p7(&split.plus), rm_reduce_mod_p7(&split.minus)];
                let r = a_e.rem_euclid(7) as u64;
                Ok(if residues.contains(&r) {
                    PrimeVerdict::Match { a_e, residues }
                } else {
                    PrimeVerdict::Mismatch { a_e, residues }
                })
            })()
            .unwrap_or_else(|err| PrimeVerdict::Error { message: err.to_string() });
            PrimeCheck { key: p.key(), norm: p.norm_u64(), verdict }
        })
        .collect();
    Ok(CongruenceReport { bound, excluded_characteristics: exclude.to_vec(), checks })
}
