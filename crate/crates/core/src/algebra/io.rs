//! JSON algebra documents.
//!
//! ```json
//! {
//!   "dim": 4,
//!   "products": [
//!     { "left": 1, "right": 3, "result": [[4, "1"]] }
//!   ],
//!   "constraints": [],
//!   "label": "example"
//! }
//! ```
//!
//! Indices are 1-based. Absent pairs mean a zero product. A file may hold one
//! document or an array of them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::StructureConstants;
use crate::scalar::{ParameterConstraint, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum AlgebraIoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for AlgebraIoError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep only the message.
        let message = match full.rfind(" at line ") {
            Some(pos) => full[..pos].to_string(),
            None => full,
        };
        AlgebraIoError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(usize, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default)]
    pub constraints: Vec<ParameterConstraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    Many(Vec<AlgebraDocument>),
    One(Box<AlgebraDocument>),
}

impl AlgebraDocument {
    pub fn from_algebra(a: &StructureConstants) -> Self {
        let products = a
            .nonzero_products()
            .map(|(i, j, p)| ProductEntry {
                left: i + 1,
                right: j + 1,
                result: p
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, c.clone()))
                    .collect(),
            })
            .collect();
        AlgebraDocument {
            dim: a.dim(),
            basis: a.basis_names().map(<[String]>::to_vec),
            products,
            constraints: a.constraints().to_vec(),
            label: a.label().map(str::to_string),
        }
    }

    pub fn to_algebra(&self) -> Result<StructureConstants, AlgebraIoError> {
        let n = self.dim;
        let check = |idx: usize, what: &str| {
            if idx == 0 || idx > n {
                Err(AlgebraIoError::Invalid(format!(
                    "{what} index {idx} out of range 1..={n}"
                )))
            } else {
                Ok(idx - 1)
            }
        };
        let mut a = StructureConstants::abelian(n);
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.products {
            let i = check(p.left, "left")?;
            let j = check(p.right, "right")?;
            if !seen.insert((i, j)) {
                return Err(AlgebraIoError::Invalid(format!(
                    "duplicate product entry ({}, {})",
                    p.left, p.right
                )));
            }
            let mut v = vec![Scalar::zero(); n];
            for (k, c) in &p.result {
                let k = check(*k, "result")?;
                v[k] = &v[k] + c;
            }
            a.set_product(i, j, &v);
        }
        if let Some(names) = &self.basis {
            if names.len() != n {
                return Err(AlgebraIoError::Invalid(format!(
                    "basis has {} names for dimension {n}",
                    names.len()
                )));
            }
            a = a.with_basis_names(names.clone());
        }
        a.set_label(self.label.clone());
        Ok(a.with_constraints(self.constraints.clone()))
    }
}

/// Parses one document or an array of documents.
pub fn parse_algebras(text: &str) -> Result<Vec<StructureConstants>, AlgebraIoError> {
    let docs = match serde_json::from_str::<OneOrMany>(text) {
        Ok(OneOrMany::Many(v)) => v,
        Ok(OneOrMany::One(d)) => vec![*d],
        // The untagged error carries no position; re-parse for a precise one.
        Err(_) => match text.trim_start().starts_with('[') {
            true => serde_json::from_str::<Vec<AlgebraDocument>>(text)?,
            false => vec![serde_json::from_str::<AlgebraDocument>(text)?],
        },
    };
    docs.iter().map(AlgebraDocument::to_algebra).collect()
}

/// Parses exactly one algebra.
pub fn parse_algebra(text: &str) -> Result<StructureConstants, AlgebraIoError> {
    let mut v = parse_algebras(text)?;
    if v.len() != 1 {
        return Err(AlgebraIoError::Invalid(format!(
            "expected one algebra, found {}",
            v.len()
        )));
    }
    Ok(v.pop().unwrap())
}

pub fn algebra_to_json(a: &StructureConstants) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraDocument::from_algebra(a))
        .expect("document serializes");
    s.push('\n');
    s
}

pub fn algebras_to_json(list: &[StructureConstants]) -> String {
    let docs: Vec<_> = list.iter().map(AlgebraDocument::from_algebra).collect();
    let mut s = serde_json::to_string_pretty(&docs).expect("documents serialize");
    s.push('\n');
    s
}

pub fn load_algebras(path: &Path) -> Result<Vec<StructureConstants>, AlgebraIoError> {
    let text = std::fs::read_to_string(path).map_err(|source| AlgebraIoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_algebras(&text)
}

pub fn load_algebra(path: &Path) -> Result<StructureConstants, AlgebraIoError> {
    let text = std::fs::read_to_string(path).map_err(|source| AlgebraIoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_algebra(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_parameter() {
        let c = Scalar::param("c");
        let a = StructureConstants::from_products(
            3,
            [
                (0, 1, vec![(2, Scalar::one())]),
                (1, 0, vec![(2, c)]),
            ],
        )
        .with_constraints(vec![ParameterConstraint::not_plus_minus_one("c")])
        .with_label("B2(c)");
        let text = algebra_to_json(&a);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(algebra_to_json(&back), text);
    }

    #[test]
    fn array_and_errors() {
        let list = vec![StructureConstants::abelian(1), StructureConstants::abelian(2)];
        let text = algebras_to_json(&list);
        assert_eq!(parse_algebras(&text).unwrap(), list);

        let bad = "{\n  \"dim\": 2,\n  \"products\": [ {\"left\": 1, \"right\": 1, \"result\": [[2, \"1/0\"]]} ]\n}";
        match parse_algebra(bad) {
            Err(AlgebraIoError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let out_of_range = r#"{"dim": 2, "products": [{"left": 3, "right": 1, "result": []}]}"#;
        assert!(matches!(parse_algebra(out_of_range), Err(AlgebraIoError::Invalid(_))));
    }
}
