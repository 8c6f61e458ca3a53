//! Machine-checkable pass/fail records.
//!
//! A certificate's verdict is recomputed from its witness: every check stores
//! the exact values (as strings) or the name of a witness matrix it inspects.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::exact::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    Equal { label: String, computed: String, required: String },
    NotEqual { label: String, computed: String, forbidden: String },
    Symmetric { label: String, matrix: String },
    Zero { label: String, matrix: String },
    MatricesEqual { label: String, left: String, right: String },
}

impl Check {
    pub fn label(&self) -> &str {
        match self {
            Check::Equal { label, .. }
            | Check::NotEqual { label, .. }
            | Check::Symmetric { label, .. }
            | Check::Zero { label, .. }
            | Check::MatricesEqual { label, .. } => label,
        }
    }

    pub fn holds(&self, matrices: &BTreeMap<String, ExactMatrix>) -> bool {
        match self {
            Check::Equal { computed, required, .. } => computed == required,
            Check::NotEqual { computed, forbidden, .. } => computed != forbidden,
            Check::Symmetric { matrix, .. } => matrices.get(matrix).is_some_and(ExactMatrix::is_symmetric),
            Check::Zero { matrix, .. } => matrices.get(matrix).is_some_and(ExactMatrix::is_zero),
            Check::MatricesEqual { left, right, .. } => match (matrices.get(left), matrices.get(right)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, ExactMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(name: impl Into<String>) -> Self {
        Certificate { name: name.into(), passed: true, checks: Vec::new(), matrices: BTreeMap::new(), notes: Vec::new() }
    }

    pub fn equal(&mut self, label: impl Into<String>, computed: impl Display, required: impl Display) -> &mut Self {
        self.checks.push(Check::Equal { label: label.into(), computed: computed.to_string(), required: required.to_string() });
        self.seal()
    }

    pub fn not_equal(&mut self, label: impl Into<String>, computed: impl Display, forbidden: impl Display) -> &mut Self {
        self.checks.push(Check::NotEqual { label: label.into(), computed: computed.to_string(), forbidden: forbidden.to_string() });
        self.seal()
    }

    pub fn symmetric(&mut self, label: impl Into<String>, key: impl Into<String>, m: ExactMatrix) -> &mut Self {
        let key = key.into();
        self.matrices.insert(key.clone(), m);
        self.checks.push(Check::Symmetric { label: label.into(), matrix: key });
        self.seal()
    }

    pub fn zero(&mut self, label: impl Into<String>, key: impl Into<String>, m: ExactMatrix) -> &mut Self {
        let key = key.into();
        self.matrices.insert(key.clone(), m);
        self.checks.push(Check::Zero { label: label.into(), matrix: key });
        self.seal()
    }

    pub fn matrices_equal(&mut self, label: impl Into<String>, left: (String, ExactMatrix), right: (String, ExactMatrix)) -> &mut Self {
        self.checks.push(Check::MatricesEqual { label: label.into(), left: left.0.clone(), right: right.0.clone() });
        self.matrices.insert(left.0, left.1);
        self.matrices.insert(right.0, right.1);
        self.seal()
    }

    pub fn witness(&mut self, key: impl Into<String>, m: ExactMatrix) -> &mut Self {
        self.matrices.insert(key.into(), m);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    fn seal(&mut self) -> &mut Self {
        self.passed = self.recheck();
        self
    }

    /// Re-derives the verdict from the stored witness.
    pub fn recheck(&self) -> bool {
        self.checks.iter().all(|c| c.holds(&self.matrices))
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.holds(&self.matrices)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_witness() {
        let mut c = Certificate::new("demo");
        c.equal("rank", 21, 21);
        assert!(c.passed);
        c.symmetric("sym", "B", ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert!(!c.passed);
        assert_eq!(c.failures().len(), 1);

        let js = serde_json::to_string(&c).unwrap();
        let mut back: Certificate = serde_json::from_str(&js).unwrap();
        assert_eq!(back.recheck(), c.passed);
        back.matrices.insert("B".into(), ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert!(back.recheck());
    }
}
