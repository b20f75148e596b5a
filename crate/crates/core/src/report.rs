//! Uniform records for identity checks.

use serde::Serialize;
use serde_json::Value;

/// One instance of an identity: both sides rendered canonically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub parameters: Value,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        parameters: Value,
        lhs: impl ToString,
        rhs: impl ToString,
    ) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let equal = lhs == rhs;
        Self {
            check: check.into(),
            parameters,
            lhs,
            rhs,
            equal,
        }
    }

    /// A record whose verdict is not a plain string comparison.
    pub fn with_verdict(
        check: impl Into<String>,
        parameters: Value,
        lhs: impl ToString,
        rhs: impl ToString,
        equal: bool,
    ) -> Self {
        Self {
            check: check.into(),
            parameters,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            equal,
        }
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.equal)
}

/// The first failing record, if any.
pub fn first_failure(records: &[CheckRecord]) -> Option<&CheckRecord> {
    records.iter().find(|r| !r.equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn records_compare_rendered_sides() {
        let r = CheckRecord::new("demo", json!({"n": 2}), "1 + q", "1 + q");
        assert!(r.equal);
        let s = CheckRecord::new("demo", json!({}), "1", "q");
        assert!(!s.equal);
        assert_eq!(first_failure(&[r.clone(), s.clone()]), Some(&s));
        assert!(!all_pass(&[r, s]));
        let text = serde_json::to_string(&CheckRecord::new("x", json!(null), 1, 1)).unwrap();
        assert_eq!(text, r#"{"check":"x","parameters":null,"lhs":"1","rhs":"1","equal":true}"#);
    }
}
