use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LieAlgebra, LieError};
use crate::exactnum::GaussRat;
use crate::FORMAT;

/// Wire form of an algebra. Indices are one-based; omitted pairs bracket to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, GaussRat>,
}

impl LieAlgebra {
    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            format: Some(FORMAT.to_string()),
            name: None,
            dim: self.dim,
            labels: Some(self.labels.clone()),
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), v)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    out: v.iter().map(|(&k, c)| (k + 1, c.clone())).collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self, LieError> {
        if let Some(f) = &doc.format {
            if f != FORMAT {
                return Err(LieError::Document(format!("unsupported format '{f}'")));
            }
        }
        let one_based = |x: usize| {
            x.checked_sub(1)
                .filter(|&z| z < doc.dim)
                .ok_or(LieError::IndexOutOfRange {
                    index: x,
                    dim: doc.dim,
                })
        };
        let mut entries = Vec::with_capacity(doc.brackets.len());
        for b in &doc.brackets {
            let mut out = BTreeMap::new();
            for (&k, c) in &b.out {
                if !c.is_zero() {
                    out.insert(one_based(k)?, c.clone());
                }
            }
            entries.push((one_based(b.i)?, one_based(b.j)?, out));
        }
        LieAlgebra::new(doc.dim, doc.labels.clone(), entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("algebra documents serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self, LieError> {
        let doc: AlgebraDoc =
            serde_json::from_str(s).map_err(|e| LieError::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let g = LieAlgebra::from_json_str(r#"{"dim": 3, "labels": ["x","y","z"], "brackets": [{"i": 1, "j": 2, "out": {"3": "1"}}]}"#)
            .unwrap();
        assert_eq!(
            g.bracket_basis(0, 1),
            BTreeMap::from([(2, GaussRat::one())])
        );
        assert_eq!(g.labels()[2], "z");
    }

    #[test]
    fn reversed_pair_is_negated() {
        let g = LieAlgebra::from_json_str(
            r#"{"dim": 2, "brackets": [{"i": 2, "j": 1, "out": {"1": "2/3+i"}}]}"#,
        )
        .unwrap();
        assert_eq!(g.bracket_basis(0, 1)[&0], "-2/3-i".parse().unwrap());
    }

    #[test]
    fn rejects_out_of_range_and_foreign_format() {
        assert!(LieAlgebra::from_json_str(
            r#"{"dim": 2, "brackets": [{"i": 1, "j": 3, "out": {}}]}"#
        )
        .is_err());
        assert!(LieAlgebra::from_json_str(
            r#"{"dim": 2, "brackets": [{"i": 0, "j": 1, "out": {}}]}"#
        )
        .is_err());
        assert!(LieAlgebra::from_json_str(r#"{"format": "other", "dim": 1}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let g = LieAlgebra::from_constants(4, None, &[(1, 2, 3, 1), (1, 3, 4, -2)]);
        let text = g.to_json().to_string();
        assert_eq!(LieAlgebra::from_json_str(&text).unwrap(), g);
    }
}
