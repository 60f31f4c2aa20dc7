use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::{Check, Target};
use crate::indrel::{Axiom, Scope, Status, Timing, Verdict};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

pub const ACCESSIBILITY: &str = "not evaluated (infinitary)";
pub const UNION: &str = "proxy (finite chains <= 4)";

pub const NSOP1_AXIOMS: [Axiom; 7] = [
    Axiom::Invariance,
    Axiom::Monotonicity,
    Axiom::Transitivity,
    Axiom::Symmetry,
    Axiom::Existence,
    Axiom::ThreeAmalgamation,
    Axiom::UnionFiniteChain,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grade {
    HoldsWithinScope,
    Fails,
    /// Some required axiom is missing, inconclusive or errored.
    Undetermined,
}

impl Grade {
    fn meet(self, other: Grade) -> Grade {
        match (self, other) {
            (Grade::Fails, _) | (_, Grade::Fails) => Grade::Fails,
            (Grade::HoldsWithinScope, Grade::HoldsWithinScope) => Grade::HoldsWithinScope,
            _ => Grade::Undetermined,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub target: String,
    pub relation: String,
    pub nsop1_like: Grade,
    pub simple: Grade,
    pub stable: Grade,
    pub accessibility: String,
    pub union: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub key: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Status>,
    pub unexpected: bool,
}

impl CheckResult {
    pub fn status(&self) -> Option<Status> {
        self.verdict.as_ref().map(|v| v.status)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    High,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub tool_version: String,
    pub scope: Scope,
    pub relation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<String>,
    pub checks: Vec<CheckResult>,
    pub classifications: Vec<Classification>,
    pub findings: Vec<Finding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_classification: Option<String>,
    pub timing: Timing,
}

/// Grades of one target from the axiom verdicts in `checks`.
pub fn classify(target: Target, relation: &str, checks: &[CheckResult]) -> Classification {
    let grade = |a: Axiom| {
        let key = Check::Axiom(target, a).key();
        match checks.iter().find(|c| c.key == key).and_then(CheckResult::status) {
            Some(Status::HoldsWithinScope) => Grade::HoldsWithinScope,
            Some(Status::Fails) => Grade::Fails,
            _ => Grade::Undetermined,
        }
    };
    let nsop1_like = NSOP1_AXIOMS.into_iter().map(grade).fold(Grade::HoldsWithinScope, Grade::meet);
    let simple = nsop1_like.meet(grade(Axiom::BaseMonotonicity));
    let stable = simple.meet(grade(Axiom::Uniqueness));
    let label = if stable == Grade::HoldsWithinScope {
        "stable-within-scope"
    } else if simple == Grade::HoldsWithinScope {
        "simple-within-scope"
    } else if nsop1_like == Grade::HoldsWithinScope {
        "nsop1-like-within-scope"
    } else if nsop1_like == Grade::Fails {
        "not-nsop1-like"
    } else {
        "undetermined"
    };
    Classification {
        target: target.tag().into(),
        relation: relation.into(),
        nsop1_like,
        simple,
        stable,
        accessibility: ACCESSIBILITY.into(),
        union: UNION.into(),
        label: label.into(),
    }
}

impl SuiteReport {
    pub fn classification(&self, target: Target) -> Option<&Classification> {
        self.classifications.iter().find(|c| c.target == target.tag())
    }

    pub fn check(&self, key: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.key == key)
    }

    pub fn has_errors(&self) -> bool {
        self.checks.iter().any(|c| c.error.is_some())
    }

    pub fn has_unexpected(&self) -> bool {
        let label = self.classification(Target::Lift).map(|c| c.label.as_str());
        self.checks.iter().any(|c| c.unexpected)
            || self.findings.iter().any(|f| f.severity == Severity::High)
            || self.expected_classification.as_deref().is_some_and(|e| Some(e) != label)
    }

    /// 0 when everything is as expected, 1 on an unexpected verdict, 2 when a check
    /// could not run.
    pub fn exit_code(&self) -> i32 {
        if self.has_errors() {
            2
        } else if self.has_unexpected() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> crate::Result<SuiteReport> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} ({})", self.suite, self.tool_version);
        let _ = writeln!(out, "relation {}", self.relation);
        if let Some(f) = &self.functor {
            let _ = writeln!(out, "functor {f}");
        }
        let _ = writeln!(
            out,
            "scope size {} completion {} {}",
            self.scope.max_size,
            self.scope.completion_size,
            if self.scope.exhaustive { "exhaustive".to_string() } else { format!("sampled seed {} rate {}", self.scope.seed, self.scope.sample_rate) }
        );
        for c in &self.checks {
            let status = match (&c.verdict, &c.error) {
                (Some(v), _) => v.status.tag().to_string(),
                (None, Some(e)) => format!("error: {e}"),
                (None, None) => "not run".into(),
            };
            let obligations = c.verdict.as_ref().map_or(0, |v| v.timing.obligations);
            let flag = if c.unexpected { "  UNEXPECTED" } else { "" };
            let _ = writeln!(out, "  {:<36} {:<20} {:>8} obligations{flag}", c.key, status, obligations);
            if let Some(note) = c.verdict.as_ref().and_then(|v| v.note.as_ref()) {
                let _ = writeln!(out, "  {:<36} note: {note}", "");
            }
        }
        for c in &self.classifications {
            let _ = writeln!(out, "classification {} ({}): {}", c.target, c.relation, c.label);
            let _ = writeln!(out, "  accessibility {}; union {}", c.accessibility, c.union);
        }
        for f in &self.findings {
            let tag = match f.severity {
                Severity::High => "HIGH",
                Severity::Info => "info",
            };
            let _ = writeln!(out, "finding [{tag}] {}", f.message);
        }
        let _ = writeln!(out, "exit {}", self.exit_code());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indrel::Tally;

    fn result(target: Target, a: Axiom, status: Status) -> CheckResult {
        let mut v = Tally::new().verdict("r", a.tag(), &Scope::new(1, 1), None);
        v.status = status;
        CheckResult { key: Check::Axiom(target, a).key(), verdict: Some(v), error: None, expected: None, unexpected: false }
    }

    #[test]
    fn classification_nests() {
        let mut checks: Vec<CheckResult> =
            NSOP1_AXIOMS.iter().map(|&a| result(Target::Lift, a, Status::HoldsWithinScope)).collect();
        assert_eq!(classify(Target::Lift, "r", &checks).label, "nsop1-like-within-scope");
        checks.push(result(Target::Lift, Axiom::BaseMonotonicity, Status::HoldsWithinScope));
        checks.push(result(Target::Lift, Axiom::Uniqueness, Status::Fails));
        let c = classify(Target::Lift, "r", &checks);
        assert_eq!((c.label.as_str(), c.stable), ("simple-within-scope", Grade::Fails));
        assert_eq!(classify(Target::Base, "r", &checks).label, "undetermined");
        checks[0] = result(Target::Lift, Axiom::Invariance, Status::Fails);
        let c = classify(Target::Lift, "r", &checks);
        assert_eq!((c.label.as_str(), c.simple, c.stable), ("not-nsop1-like", Grade::Fails, Grade::Fails));
    }
}
