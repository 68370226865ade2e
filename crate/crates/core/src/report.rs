//! Pass/fail reports shared by every verifier.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), pass: true, checks: Vec::new(), seed: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn record(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>, witness: Option<String>) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, detail: detail.into(), witness });
    }

    /// Records a check from a failure tally and the first witness seen.
    pub fn tally(&mut self, name: impl Into<String>, tested: usize, failures: usize, witness: Option<String>) {
        let detail = format!("{tested} cases, {failures} failures");
        self.record(name, failures == 0, detail, witness);
    }

    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            let name = format!("{}/{}", other.suite, c.name);
            self.record(name, c.pass, c.detail, c.witness);
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects failures while scanning many cases; keeps the first witness.
#[derive(Default)]
pub(crate) struct Tally {
    pub tested: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl Tally {
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    pub fn into_report(self, report: &mut Report, name: &str) {
        report.tally(name, self.tested, self.failures, self.witness);
    }
}
