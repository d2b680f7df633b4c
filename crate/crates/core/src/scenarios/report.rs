//! Scenario reports and verdicts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Obstructed,
    Consistent,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::Consistent => "CONSISTENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Where the expected value of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Source {
    /// Stated in the literature the scenario reproduces.
    Paper,
    /// Obtained here by an independent computation.
    Derived,
    /// Holds by construction.
    Trivial,
}

/// A residual, either an exact expression or a numeric norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residual {
    Symbolic(String),
    Numeric(f64),
}

impl Residual {
    pub fn is_symbolic_nonzero(&self) -> bool {
        matches!(self, Residual::Symbolic(s) if s != "0")
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Symbolic(s) => f.write_str(s),
            Residual::Numeric(x) => write!(f, "{x:.3e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub residual: Residual,
    /// The residual matches its expectation.
    pub pass: bool,
    pub source: Source,
    /// A nonzero symbolic residual of this check is a no-go witness.
    #[serde(skip)]
    pub witness: bool,
}

impl Check {
    pub fn symbolic(id: &str, residual: impl fmt::Display, pass: bool, source: Source) -> Self {
        Check {
            id: id.to_string(),
            residual: Residual::Symbolic(residual.to_string()),
            pass,
            source,
            witness: false,
        }
    }

    /// Numeric check passing when `value <= tolerance`.
    pub fn numeric(id: &str, value: f64, tolerance: f64, source: Source) -> Self {
        Check {
            id: id.to_string(),
            residual: Residual::Numeric(value),
            pass: value.is_finite() && value <= tolerance,
            source,
            witness: false,
        }
    }

    pub fn as_witness(mut self) -> Self {
        self.witness = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl ScenarioReport {
    pub fn new(scenario: &str) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            verdict: Verdict::Inconclusive,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Sets the verdict from the checks and returns the report.
    pub fn finish(mut self) -> Self {
        self.verdict = verdict_of(&self.checks);
        self
    }
}

/// OBSTRUCTED when a witness check carries a nonzero exact residual,
/// CONSISTENT when there are checks and all of them pass, INCONCLUSIVE
/// otherwise. Numeric checks alone never produce OBSTRUCTED.
pub fn verdict_of(checks: &[Check]) -> Verdict {
    if checks
        .iter()
        .any(|c| c.witness && c.residual.is_symbolic_nonzero())
    {
        Verdict::Obstructed
    } else if !checks.is_empty() && checks.iter().all(|c| c.pass) {
        Verdict::Consistent
    } else {
        Verdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_inconclusive() {
        assert_eq!(
            ScenarioReport::new("x").finish().verdict,
            Verdict::Inconclusive
        );
    }

    #[test]
    fn numeric_never_obstructs() {
        let c = Check::numeric("n", 5.0, 1.0, Source::Derived).as_witness();
        assert_eq!(verdict_of(&[c]), Verdict::Inconclusive);
        let w = Check::symbolic("w", "hbar", true, Source::Paper).as_witness();
        assert_eq!(verdict_of(&[w]), Verdict::Obstructed);
    }

    #[test]
    fn json_shape() {
        let mut r = ScenarioReport::new("t").param("grid", 64);
        r.push(Check::numeric("a", 0.5, 1.0, Source::Trivial));
        let s = serde_json::to_string(&r.finish()).unwrap();
        assert_eq!(
            s,
            r#"{"scenario":"t","params":{"grid":64},"checks":[{"id":"a","residual":0.5,"pass":true,"source":"TRIVIAL"}],"verdict":"CONSISTENT"}"#
        );
    }
}
