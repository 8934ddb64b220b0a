use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{from_one_based, one_based, VertexSet};

/// Violations kept verbatim; the rest are only counted.
pub const MAX_STORED_VIOLATIONS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(rename = "X", serialize_with = "one_based", deserialize_with = "from_one_based")]
    pub x: Vec<usize>,
    #[serde(rename = "Y", serialize_with = "one_based", deserialize_with = "from_one_based")]
    pub y: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_name: String,
    pub pass: bool,
    pub instances: u64,
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    /// Largest `lhs − rhs` over all instances; negative when every instance
    /// holds strictly. `None` if nothing was checked.
    pub max_slack: Option<f64>,
    pub params: BTreeMap<String, f64>,
    /// Set when the bound's hypotheses failed and nothing was checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_failed: Option<String>,
}

impl BoundReport {
    pub fn new(name: &str) -> Self {
        Self {
            bound_name: name.to_string(),
            pass: true,
            instances: 0,
            violations: Vec::new(),
            violation_count: 0,
            max_slack: None,
            params: BTreeMap::new(),
            hypothesis_failed: None,
        }
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Records one instance; a violation means `lhs > rhs + tolerance`.
    pub fn record(&mut self, lhs: f64, rhs: f64, tolerance: f64, sets: impl FnOnce() -> (Vec<usize>, Vec<usize>)) {
        self.instances += 1;
        let slack = lhs - rhs;
        self.max_slack = Some(self.max_slack.map_or(slack, |m| m.max(slack)));
        if lhs > rhs + tolerance {
            self.pass = false;
            self.violation_count += 1;
            if self.violations.len() < MAX_STORED_VIOLATIONS {
                let (x, y) = sets();
                self.violations.push(Violation { x, y, lhs, rhs });
            }
        }
    }

    /// Folds another report on the same bound into this one.
    pub fn merge(&mut self, other: BoundReport) {
        self.instances += other.instances;
        self.violation_count += other.violation_count;
        self.pass &= other.pass;
        if let Some(s) = other.max_slack {
            self.max_slack = Some(self.max_slack.map_or(s, |m| m.max(s)));
        }
        for v in other.violations {
            if self.violations.len() < MAX_STORED_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }
}

pub(crate) fn sets_of(x: &VertexSet, y: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    (x.to_vec(), y.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_tracks_slack_and_caps_storage() {
        let mut r = BoundReport::new("t");
        r.record(1.0, 2.0, 0.0, || unreachable!());
        assert!(r.pass);
        assert_eq!(r.max_slack, Some(-1.0));
        for _ in 0..40 {
            r.record(3.0, 2.0, 0.0, || (vec![0], vec![1]));
        }
        assert!(!r.pass);
        assert_eq!(r.violation_count, 40);
        assert_eq!(r.violations.len(), MAX_STORED_VIOLATIONS);
        let json = serde_json::to_string(&r.violations[0]).unwrap();
        assert_eq!(json, r#"{"X":[1],"Y":[2],"lhs":3.0,"rhs":2.0}"#);
    }
}
