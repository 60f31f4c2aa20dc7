use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::indrel::{Axiom, Scope, Status};
use crate::{Error, Result};

/// Largest carrier size a suite may request.
pub const MAX_SCOPE_SIZE: usize = 8;
/// Largest completion bound a suite may request.
pub const MAX_COMPLETION_SIZE: usize = 12;

/// Which relation an axiom check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// The relation as referenced, on the codomain of the functor.
    Base,
    /// Its lift along the functor; the relation itself when there is none.
    Lift,
}

impl Target {
    pub fn tag(self) -> &'static str {
        match self {
            Target::Base => "base",
            Target::Lift => "lift",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctorCheck {
    Laws,
    ReflectsAmalgamation,
    PreservesJoins,
    AdmitsCompletions(u8),
    HornAmalgamation,
    CompletionImplication,
    MultiReflection,
}

/// One check of a suite, addressed as `base/<axiom>`, `lift/<axiom>` or
/// `functor/<property>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Check {
    Axiom(Target, Axiom),
    Functor(FunctorCheck),
}

impl Check {
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Axiom(t, a) => write!(f, "{}/{}", t.tag(), a.tag()),
            Check::Functor(c) => match c {
                FunctorCheck::Laws => f.write_str("functor/laws"),
                FunctorCheck::ReflectsAmalgamation => f.write_str("functor/reflects-amalgamation"),
                FunctorCheck::PreservesJoins => f.write_str("functor/preserves-joins"),
                FunctorCheck::AdmitsCompletions(n) => write!(f, "functor/admits-{n}-completions"),
                FunctorCheck::HornAmalgamation => f.write_str("functor/horn-amalgamation"),
                FunctorCheck::CompletionImplication => f.write_str("functor/completion-implication"),
                FunctorCheck::MultiReflection => f.write_str("functor/multi-reflection"),
            },
        }
    }
}

impl std::str::FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        let bad = || Error::Parse(format!("check `{s}`"));
        let (scope, what) = s.split_once('/').ok_or_else(bad)?;
        Ok(match scope {
            "base" => Check::Axiom(Target::Base, what.parse()?),
            "lift" => Check::Axiom(Target::Lift, what.parse()?),
            "functor" => Check::Functor(match what {
                "laws" => FunctorCheck::Laws,
                "reflects-amalgamation" => FunctorCheck::ReflectsAmalgamation,
                "preserves-joins" => FunctorCheck::PreservesJoins,
                "horn-amalgamation" => FunctorCheck::HornAmalgamation,
                "completion-implication" => FunctorCheck::CompletionImplication,
                "multi-reflection" => FunctorCheck::MultiReflection,
                w => {
                    let n = w.strip_prefix("admits-").and_then(|r| r.strip_suffix("-completions")).ok_or_else(bad)?;
                    match n.parse::<u8>() {
                        Ok(n @ 1..=3) => FunctorCheck::AdmitsCompletions(n),
                        _ => return Err(bad()),
                    }
                }
            }),
            _ => return Err(bad()),
        })
    }
}

impl TryFrom<String> for Check {
    type Error = Error;

    fn try_from(s: String) -> Result<Check> {
        s.parse()
    }
}

impl From<Check> for String {
    fn from(c: Check) -> String {
        c.key()
    }
}

/// A registry relation: `kind` is one of pullback, lin, star, zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRef {
    pub kind: String,
    pub category: String,
    pub class: String,
}

impl RelationRef {
    pub fn new(kind: &str, category: &str, class: &str) -> RelationRef {
        RelationRef { kind: kind.into(), category: category.into(), class: class.into() }
    }
}

/// An implication between check outcomes: if every hypothesis holds, every
/// conclusion must hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem {
    pub name: String,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub name: String,
    pub relation: RelationRef,
    /// Registry functor to lift along; `identity` is accepted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<String>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<Theorem>,
    #[serde(default)]
    pub scope: Scope,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Expected status per check key.
    #[serde(default)]
    pub expect: BTreeMap<String, Status>,
    /// Expected classification label of the lifted relation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_classification: Option<String>,
    /// Registry entries removed before resolution.
    #[serde(default)]
    pub disabled: Vec<String>,
}

impl SuiteConfig {
    pub fn new(name: &str, relation: RelationRef, scope: Scope) -> SuiteConfig {
        SuiteConfig {
            name: name.into(),
            relation,
            functor: None,
            checks: Vec::new(),
            theorem: None,
            scope,
            format: Format::Json,
            out: None,
            expect: BTreeMap::new(),
            expect_classification: None,
            disabled: Vec::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<SuiteConfig> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    /// Every check to run, theorem checks included, ordered by key.
    pub fn all_checks(&self) -> Vec<Check> {
        let mut all: Vec<Check> = self.checks.clone();
        if let Some(t) = &self.theorem {
            all.extend(t.hypotheses.iter().chain(&t.conclusions).copied());
        }
        all.sort_by_key(Check::key);
        all.dedup();
        all
    }

    /// Structural validation; registry references are checked on resolution.
    pub fn validate(&self) -> Result<()> {
        self.scope.validate()?;
        if self.scope.max_size > MAX_SCOPE_SIZE || self.scope.completion_size > MAX_COMPLETION_SIZE {
            return Err(Error::ScopeExceeded(format!(
                "scope ({}, {}) exceeds the caps ({MAX_SCOPE_SIZE}, {MAX_COMPLETION_SIZE})",
                self.scope.max_size, self.scope.completion_size
            )));
        }
        let checks = self.all_checks();
        if self.functor.is_none() && checks.iter().any(|c| matches!(c, Check::Functor(_))) {
            return Err(Error::Contract(format!("suite {} has functor checks but no functor", self.name)));
        }
        if let Some(k) = self.expect.keys().find(|k| !checks.iter().any(|c| c.key() == **k)) {
            return Err(Error::Contract(format!("expectation for `{k}`, which is not a check of {}", self.name)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_keys_round_trip() {
        for key in [
            "base/uniqueness",
            "lift/3-amalgamation",
            "lift/union-finite-chain",
            "functor/laws",
            "functor/admits-2-completions",
            "functor/multi-reflection",
        ] {
            assert_eq!(key.parse::<Check>().unwrap().key(), key);
        }
        for bad in ["uniqueness", "lift/nope", "functor/admits-4-completions", "side/uniqueness"] {
            assert!(bad.parse::<Check>().is_err(), "{bad}");
        }
    }

    #[test]
    fn configs_read_partial_scopes() {
        let c = SuiteConfig::from_json(
            r#"{"name": "t", "relation": {"kind": "pullback", "category": "fin-set", "class": "mono"},
                "checks": ["lift/symmetry"], "scope": {"max_size": 2}}"#,
        )
        .unwrap();
        assert_eq!(c.scope.max_size, 2);
        assert_eq!(c.scope.completion_size, Scope::default().completion_size);
        assert_eq!(SuiteConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn validation() {
        let mut c = SuiteConfig::new("t", RelationRef::new("pullback", "fin-set", "mono"), Scope::new(9, 4));
        assert!(matches!(c.validate(), Err(Error::ScopeExceeded(_))));
        c.scope = Scope::new(3, 4);
        c.checks = vec!["functor/laws".parse().unwrap()];
        assert!(matches!(c.validate(), Err(Error::Contract(_))));
        c.checks.clear();
        c.expect.insert("lift/symmetry".into(), Status::Fails);
        assert!(c.validate().is_err());
    }
}
