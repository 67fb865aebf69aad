use std::fmt;

use serde::Serialize;

use crate::search::{self, Coverage};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    /// The statement under test is conditional and its hypothesis does not hold.
    NotApplicable,
    /// An enumeration hit its work budget before finishing.
    BudgetExceeded,
}

/// A failing tuple together with the rule it broke.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub rule: String,
    pub elements: Vec<usize>,
    pub labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} at ({})", self.rule, self.labels.join(", "))?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

/// Outcome of a law suite. `witness` is present exactly when `status` is `Failed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub coverage: Coverage,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Failed
    }

    pub fn rule(&self) -> Option<&str> {
        self.witness.as_ref().map(|w| w.rule.as_str())
    }

    pub fn not_applicable(suite: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            status: Status::NotApplicable,
            witness: None,
            coverage: Coverage::Exhaustive,
            notes: vec![reason.into()],
        }
    }

    /// Collapses sub-reports into one: the first non-passing report decides.
    pub fn combine(suite: impl Into<String>, parts: Vec<CheckReport>) -> Self {
        let suite = suite.into();
        let coverage = parts
            .iter()
            .map(|r| r.coverage)
            .find(|c| *c != Coverage::Exhaustive)
            .unwrap_or(Coverage::Exhaustive);
        let mut notes: Vec<String> = parts.iter().flat_map(|r| r.notes.iter().cloned()).collect();
        match parts.into_iter().find(|r| !r.passed()) {
            Some(bad) => {
                notes.insert(0, format!("sub-suite {}", bad.suite));
                CheckReport {
                    suite,
                    status: bad.status,
                    witness: bad.witness,
                    coverage,
                    notes,
                }
            }
            None => CheckReport {
                suite,
                status: Status::Passed,
                witness: None,
                coverage,
                notes,
            },
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Passed => "PASS",
            Status::Failed => "FAIL",
            Status::NotApplicable => "N/A",
            Status::BudgetExceeded => "BUDGET",
        };
        write!(f, "{status} {}", self.suite)?;
        if let Coverage::Sampled { seed, samples } = self.coverage {
            write!(f, " (sampled: {samples} tuples, seed {seed:#x})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " -- {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

/// Accumulates laws for one suite and remembers the first failure.
pub struct Checker<'a> {
    suite: String,
    n: usize,
    labels: &'a [String],
    coverage: Coverage,
    witness: Option<Witness>,
    notes: Vec<String>,
}

impl<'a> Checker<'a> {
    pub fn new(suite: impl Into<String>, labels: &'a [String]) -> Self {
        let n = labels.len();
        Checker {
            suite: suite.into(),
            n,
            labels,
            coverage: Coverage::for_size(n),
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn is_failed(&self) -> bool {
        self.witness.is_some()
    }

    /// Checks `holds` on every `K`-tuple of elements (skipped after a failure).
    pub fn law<const K: usize, F>(&mut self, rule: &str, holds: F) -> &mut Self
    where
        F: Fn([usize; K]) -> bool + Sync,
    {
        if self.witness.is_none() {
            if let Some(t) = search::first_failure::<K, _>(self.n, self.coverage, holds) {
                self.fail(rule, &t, None);
            }
        }
        self
    }

    /// Like [`Checker::law`], but `eval` returns a description of the
    /// violation instead of `false`.
    pub fn law_detail<const K: usize, F>(&mut self, rule: &str, eval: F) -> &mut Self
    where
        F: Fn([usize; K]) -> Option<String> + Sync,
    {
        if self.witness.is_none() {
            if let Some(t) = search::first_failure::<K, _>(self.n, self.coverage, |t| eval(t).is_none()) {
                self.fail(rule, &t, eval(t));
            }
        }
        self
    }

    /// Records a single already-evaluated check.
    pub fn check(&mut self, rule: &str, elements: &[usize], ok: bool) -> &mut Self {
        if !ok {
            self.fail(rule, elements, None);
        }
        self
    }

    pub fn fail(&mut self, rule: &str, elements: &[usize], detail: Option<String>) -> &mut Self {
        if self.witness.is_none() {
            self.witness = Some(Witness {
                rule: rule.to_string(),
                elements: elements.to_vec(),
                labels: elements
                    .iter()
                    .map(|&e| self.labels.get(e).cloned().unwrap_or_else(|| format!("#{e}")))
                    .collect(),
                detail,
            });
        }
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            suite: self.suite,
            status: if self.witness.is_some() { Status::Failed } else { Status::Passed },
            witness: self.witness,
            coverage: self.coverage,
            notes: self.notes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn witness_iff_failed() {
        let l = labels(3);
        let mut c = Checker::new("t", &l);
        c.law::<2, _>("sym", |[a, b]| a <= b || a == 2);
        let r = c.finish();
        assert!(r.failed());
        let w = r.witness.unwrap();
        assert_eq!(w.elements, vec![1, 0]);
        assert_eq!(w.labels, vec!["e1", "e0"]);

        let mut c = Checker::new("t", &l);
        c.law::<1, _>("ok", |_| true);
        let r = c.finish();
        assert!(r.passed() && r.witness.is_none());
    }

    #[test]
    fn first_rule_wins() {
        let l = labels(2);
        let mut c = Checker::new("t", &l);
        c.law::<1, _>("first", |[a]| a == 0).law::<1, _>("second", |_| false);
        assert_eq!(c.finish().rule(), Some("first"));
    }

    #[test]
    fn combine_reports_first_failure() {
        let l = labels(2);
        let ok = Checker::new("a", &l).finish();
        let mut bad = Checker::new("b", &l);
        bad.check("r", &[1], false);
        let r = CheckReport::combine("all", vec![ok, bad.finish()]);
        assert!(r.failed());
        assert_eq!(r.rule(), Some("r"));
    }
}
