//! Config-driven suites, deterministic reports and fixture replay.
//!
//! A suite names a relation in the registry, optionally a functor to lift it
//! along, and a list of checks. Reports are pure functions of the config and the
//! build: work is measured in counters rather than wall time, and checks are
//! ordered by key.

pub mod builtin;
pub mod catalogue;
pub mod config;
pub mod fixture;
pub mod report;
pub mod run;

pub use builtin::{builtin_suite, SUITES};
pub use catalogue::list_registry;
pub use config::{Check, Format, FunctorCheck, RelationRef, SuiteConfig, Target, Theorem};
pub use fixture::{replay_fixture, Fixture};
pub use report::{classify, CheckResult, Classification, Finding, Grade, Severity, SuiteReport};
pub use run::{multi_reflection_check, run_suite, run_suite_with};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indrel::{Axiom, Scope, Status};
    use crate::instances::InstanceRegistry;
    use crate::Error;

    fn small(name: &str, checks: &[&str]) -> SuiteConfig {
        let mut c = SuiteConfig::new(name, RelationRef::new("pullback", "fin-set", "mono"), Scope::new(2, 3));
        c.checks = checks.iter().map(|k| k.parse().unwrap()).collect();
        c
    }

    #[test]
    fn empty_suites_report_nothing() {
        let r = run_suite(&small("empty", &[])).unwrap();
        assert!(r.checks.is_empty() && r.classifications.is_empty() && r.findings.is_empty());
        assert_eq!(r.exit_code(), 0);
        assert_eq!(SuiteReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn reports_are_reproducible() {
        let c = small("twice", &["lift/symmetry", "lift/existence", "lift/uniqueness"]);
        let (a, b) = (run_suite(&c).unwrap(), run_suite(&c).unwrap());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
        let keys: Vec<&str> = a.checks.iter().map(|c| c.key.as_str()).collect();
        assert_eq!(keys, ["lift/existence", "lift/symmetry", "lift/uniqueness"]);
    }

    #[test]
    fn expectations_drive_the_exit_code() {
        let mut c = small("expect", &["lift/symmetry"]);
        c.expect.insert("lift/symmetry".into(), Status::Fails);
        let r = run_suite(&c).unwrap();
        assert!(r.check("lift/symmetry").unwrap().unexpected);
        assert_eq!(r.exit_code(), 1);
        c.expect.insert("lift/symmetry".into(), Status::HoldsWithinScope);
        c.expect_classification = Some("stable-within-scope".into());
        assert_eq!(run_suite(&c).unwrap().exit_code(), 1);
    }

    #[test]
    fn resolution_errors_abort() {
        let mut c = SuiteConfig::new("bad", RelationRef::new("lin", "fin-vec-2", "mono"), Scope::new(2, 2));
        c.functor = Some("bil-pair-2".into());
        assert!(matches!(run_suite(&c), Err(Error::Contract(_))));
        c.functor = None;
        c.relation = RelationRef::new("pullback", "fin-bil-2", "mono");
        assert!(matches!(run_suite(&c), Err(Error::Capability(_))));
    }

    #[test]
    fn check_errors_give_partial_reports() {
        let mut c = SuiteConfig::new("partial", RelationRef::new("pullback", "sigma-graph", "emb"), Scope::new(5, 2));
        c.checks = vec!["lift/symmetry".parse().unwrap()];
        c.expect.insert("lift/symmetry".into(), Status::HoldsWithinScope);
        let r = run_suite(&c).unwrap();
        let check = r.check("lift/symmetry").unwrap();
        assert!(check.verdict.is_none() && check.error.as_deref().unwrap().contains("scope exceeded"));
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.classification(Target::Lift).unwrap().label, "undetermined");
    }

    #[test]
    fn disabled_entries_do_not_resolve() {
        let mut c = small("off", &["lift/symmetry"]);
        c.functor = Some("graph-to-set".into());
        assert!(run_suite(&c).is_ok());
        c.disabled = vec!["graph-to-set".into()];
        assert!(matches!(run_suite(&c), Err(Error::Unknown(_))));
    }

    #[test]
    fn theorem_suites_report_findings() {
        let mut c = SuiteConfig::new("thm", RelationRef::new("pullback", "fin-set", "mono"), Scope::new(2, 3));
        c.functor = Some("graph-to-set".into());
        c.theorem = Some(Theorem {
            name: "t".into(),
            hypotheses: vec![Check::Axiom(Target::Base, Axiom::Symmetry), Check::Functor(FunctorCheck::Laws)],
            conclusions: vec![Check::Axiom(Target::Lift, Axiom::Symmetry)],
        });
        let r = run_suite(&c).unwrap();
        assert_eq!(r.findings.len(), 1);
        assert!(r.findings[0].message.contains("confirmed"), "{:?}", r.findings);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn catalogue_lists_the_registry() {
        let reg = InstanceRegistry::standard();
        let json = list_registry(&reg, &[], Format::Json);
        for name in ["fin-set", "fin-graph", "fin-vec-2", "fin-bil-2", "sigma-graph", "conn-graph", "graph-lift"] {
            assert!(json.contains(&format!("\"{name}\"")), "{name}");
        }
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["categories"].is_array() && v["functors"].is_array() && v["relations"].is_array());
        let off = list_registry(&reg, &["sigma-graph".into(), "graph-lift".into()], Format::Json);
        assert!(!off.contains("\"sigma-graph\"") && !off.contains("\"graph-lift\""));
        assert_eq!(list_registry(&reg, &[], Format::Text), list_registry(&reg, &[], Format::Text));
    }
}
