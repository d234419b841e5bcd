//! Results of a catalog run.

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Outcome of one identity at one parameter assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    #[serde(serialize_with = "ordered_params")]
    pub params: Vec<(String, String)>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

fn ordered_params<S: Serializer>(params: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(params.len()))?;
    for (k, v) in params {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn total(&self) -> usize {
        self.passed + self.failed
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub summary: Summary,
    pub results: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn push(&mut self, record: CheckRecord) {
        if record.passed {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.results.push(record);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        for r in other.results {
            self.push(r);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.results.iter().filter(|r| !r.passed)
    }

    /// Compact JSON with fields in declaration order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} [{}] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            params.join(", ")
        )?;
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, "\n  lhs: {l}\n  rhs: {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        assert_eq!(
            SuiteReport::default().to_json(),
            r#"{"summary":{"passed":0,"failed":0},"results":[]}"#
        );
    }

    #[test]
    fn params_keep_insertion_order() {
        let mut rep = SuiteReport::default();
        rep.push(CheckRecord {
            name: "demo".into(),
            params: vec![("p2".into(), "1".into()), ("k".into(), "-1".into())],
            passed: false,
            lhs: Some("x1".into()),
            rhs: Some("x2".into()),
        });
        assert_eq!(
            rep.to_json(),
            r#"{"summary":{"passed":0,"failed":1},"results":[{"name":"demo","params":{"p2":"1","k":"-1"},"passed":false,"lhs":"x1","rhs":"x2"}]}"#
        );
        assert_eq!(rep.failures().count(), 1);
    }
}
