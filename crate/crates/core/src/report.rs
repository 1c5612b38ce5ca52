//! Pass/fail reports produced by the verification routines.

use serde::Serialize;

/// Upper bound on recorded failure locations per check.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of individual items (matrix entries, basis tuples, ...) examined.
    pub items: usize,
    pub failure_count: usize,
    /// First few failure locations, in deterministic order.
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, items: 0, failure_count: 0, failures: Vec::new() }
    }

    pub fn item(&mut self, ok: bool, location: impl FnOnce() -> String) {
        self.items += 1;
        if !ok {
            self.fail(location());
        }
    }

    pub fn fail(&mut self, location: String) {
        self.passed = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(location);
        }
    }

    pub fn absorb(&mut self, other: Check) {
        self.items += other.items;
        self.failure_count += other.failure_count;
        self.passed &= other.passed;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefixes every check name, e.g. `"sdr/"`.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for c in &mut self.checks {
            c.name = format!("{}{}", prefix, c.name);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failure_summary(&self) -> String {
        let failed: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| match c.failures.first() {
                Some(loc) => format!("{} ({} failures, first at {})", c.name, c.failure_count, loc),
                None => format!("{} ({} failures)", c.name, c.failure_count),
            })
            .collect();
        if failed.is_empty() {
            "all checks passed".to_string()
        } else {
            failed.join("; ")
        }
    }

    pub fn into_result(self) -> crate::Result<Report> {
        if self.passed() {
            Ok(self)
        } else {
            Err(crate::Error::Verification(Box::new(self)))
        }
    }
}
