use serde::{Deserialize, Serialize};

/// One line of a validation or audit report.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub subject: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Finding {
    pub fn new(
        check: &str,
        subject: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        Finding {
            check: check.to_string(),
            subject: subject.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    /// A finding whose pass/fail is not a string comparison.
    pub fn with_pass(
        check: &str,
        subject: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        pass: bool,
    ) -> Self {
        Finding {
            check: check.to_string(),
            subject: subject.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    pub fn all_pass(&self) -> bool {
        self.findings.iter().all(|f| f.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.pass)
    }

    /// Sorted and deduplicated, so the content does not depend on input order.
    pub fn normalized(mut self) -> Self {
        self.findings.sort();
        self.findings.dedup();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
