//! Curve fixture files.
//!
//! ```json
//! { "name": "E_1_-1", "order": "Qsqrt13", "kind": "weierstrass",
//!   "coefficients": [[0, 0], [0, -1], [0, 0], [-25, 9], [49, -17]] }
//! ```
//!
//! Weierstrass curves list `[a1, a2, a3, a4, a6]`; hyperelliptic curves list
//! `[c0, ..., c6]` for `y^2 = sum c_i x^i`. Each coefficient is a coordinate vector
//! in the power basis of the order.

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{EllipticCurveNF, HyperellipticCurveNF};
use crate::error::{Error, Result};
use crate::numberfield::{NumberFieldOrder, OrderElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Weierstrass,
    Hyperelliptic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub name: String,
    pub order: String,
    pub kind: CurveKind,
    #[serde(with = "crate::jsonint::nested")]
    pub coefficients: Vec<Vec<BigInt>>,
    /// The model is asserted minimal at every prime; reduction types rely on this.
    #[serde(default = "default_true")]
    pub minimal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug)]
pub enum CurveModel {
    Elliptic(EllipticCurveNF),
    Hyperelliptic(HyperellipticCurveNF),
}

impl CurveModel {
    pub fn order(&self) -> &Arc<NumberFieldOrder> {
        match self {
            CurveModel::Elliptic(e) => e.order(),
            CurveModel::Hyperelliptic(c) => c.order(),
        }
    }
}

/// Parse a curve file, reporting line and column for malformed input.
pub fn parse_curve(text: &str) -> Result<(CurveFile, CurveModel)> {
    let file: CurveFile = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let model = file.build()?;
    Ok((file, model))
}

pub fn load_curve(path: &Path) -> Result<(CurveFile, CurveModel)> {
    let text = std::fs::read_to_string(path)?;
    parse_curve(&text).map_err(|e| match e {
        Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}

impl CurveFile {
    pub fn build(&self) -> Result<CurveModel> {
        let order = NumberFieldOrder::builtin(&self.order)?;
        let n = order.degree();
        let mut elems = Vec::with_capacity(self.coefficients.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.len() > n {
                return Err(Error::Schema(format!(
                    "coefficient {i} has {} coordinates but {} has degree {n}",
                    c.len(),
                    self.order
                )));
            }
            elems.push(OrderElement::new(&order, c.clone()));
        }
        let expected = match self.kind {
            CurveKind::Weierstrass => 5,
            CurveKind::Hyperelliptic => 7,
        };
        if elems.len() != expected {
            return Err(Error::Schema(format!(
                "{:?} curve needs {expected} coefficients, found {}",
                self.kind,
                elems.len()
            )));
        }
        Ok(match self.kind {
            CurveKind::Weierstrass => CurveModel::Elliptic(EllipticCurveNF::new(&order, elems.try_into().unwrap())?),
            CurveKind::Hyperelliptic => {
                CurveModel::Hyperelliptic(HyperellipticCurveNF::new(&order, elems.try_into().unwrap())?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_position_of_syntax_errors() {
        let text = "{\n  \"name\": \"x\",\n  \"order\": \"Q\",\n  \"kind\": \"weierstrass\",\n  \"coefficients\": [[0], [0] [0]]\n}";
        let err = parse_curve(text).unwrap_err();
        assert!(matches!(&err, Error::Schema(m) if m.starts_with("line 5")), "{err}");
    }

    #[test]
    fn rejects_unknown_fields_and_wrong_arity() {
        let extra = r#"{"name":"x","order":"Q","kind":"weierstrass","coefficients":[],"colour":1}"#;
        assert!(matches!(parse_curve(extra), Err(Error::Schema(_))));
        let short = r#"{"name":"x","order":"Q","kind":"weierstrass","coefficients":[[1],[0]]}"#;
        assert!(matches!(parse_curve(short), Err(Error::Schema(m)) if m.contains("needs 5")));
    }

    #[test]
    fn round_trips() {
        let text = r#"{"name":"26a1","order":"Q","kind":"weierstrass","coefficients":[[1],[0],[1],[-5],[-8]]}"#;
        let (file, _) = parse_curve(text).unwrap();
        let again = serde_json::to_string(&file).unwrap();
        assert_eq!(parse_curve(&again).unwrap().0, file);
    }
}
