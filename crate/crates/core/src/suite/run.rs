use std::sync::Arc;

use super::config::{Check, FunctorCheck, SuiteConfig, Target};
use super::report::{classify, CheckResult, Finding, Severity, SuiteReport, TOOL_VERSION};
use crate::cat::Diagram;
use crate::indrel::{check_axiom, Certificate, Relation, Scope, Status, Tally, Timing, Verdict};
use crate::instances::InstanceRegistry;
use crate::lifting::{
    admits_completions_check, check_functor_laws, check_horn_amalgamation, check_reflects_amalgamation,
    completion_implication_check, multi_reflection_at, preserves_joins_check, ConcreteFunctor,
};
use crate::{Error, Result};

/// A suite's relations after registry resolution.
pub struct Resolved {
    pub base: Relation,
    pub lift: Relation,
    pub functor: Option<ConcreteFunctor>,
}

pub fn resolve(reg: &InstanceRegistry, config: &SuiteConfig) -> Result<Resolved> {
    let r = &config.relation;
    let base = reg.resolve(&r.kind, &r.category, &r.class, None)?;
    let lift = reg.resolve(&r.kind, &r.category, &r.class, config.functor.as_deref())?;
    let functor = match config.functor.as_deref() {
        None | Some("identity") => None,
        Some(name) => Some(reg.functor(name)?.clone()),
    };
    if config.all_checks().iter().any(|c| matches!(c, Check::Functor(_))) && functor.is_none() {
        return Err(Error::Contract(format!("suite {} needs a registry functor for its functor checks", config.name)));
    }
    Ok(Resolved { base, lift, functor })
}

/// `F` is a verified multi-reflection at every codomain object within scope.
pub fn multi_reflection_check(f: &ConcreteFunctor, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    let mut tally = Tally::new();
    for d in f.cod().objects(scope.max_size)? {
        tally.timing.diagrams += 1;
        let mr = multi_reflection_at(f, &d, scope)?;
        let witness = Diagram { labels: vec!["D".into()], nodes: vec![Arc::new(d)], arrows: vec![] };
        if mr.verified {
            tally.holds(&witness);
        } else {
            let condition = match &mr.counterexample {
                Some((_, e, count)) => format!("{:?} factors {count} times through the family", e.map()),
                None => "the family is not verified".into(),
            };
            tally.violated(&witness, Certificate::Violation { condition });
        }
    }
    Ok(tally.verdict(&f.name(), "multi-reflection", scope, None))
}

fn run_check(res: &Resolved, check: Check, scope: &Scope) -> Result<Verdict> {
    let functor = || res.functor.as_ref().ok_or_else(|| Error::Contract("no functor".into()));
    match check {
        Check::Axiom(Target::Base, a) => check_axiom(&res.base, a, scope),
        Check::Axiom(Target::Lift, a) => check_axiom(&res.lift, a, scope),
        Check::Functor(c) => {
            let f = functor()?;
            match c {
                FunctorCheck::Laws => check_functor_laws(f, scope),
                FunctorCheck::ReflectsAmalgamation => check_reflects_amalgamation(f, scope),
                FunctorCheck::PreservesJoins => preserves_joins_check(f, scope),
                FunctorCheck::AdmitsCompletions(n) => admits_completions_check(f, &res.base, n, scope),
                FunctorCheck::HornAmalgamation => check_horn_amalgamation(f, &res.base, scope),
                FunctorCheck::CompletionImplication => completion_implication_check(f, &res.base, scope),
                FunctorCheck::MultiReflection => multi_reflection_check(f, scope),
            }
        }
    }
}

/// Run a suite against the registry over every shipped field.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_with(&InstanceRegistry::full(), config)
}

/// Run a suite. Capability and scope errors of single checks are recorded in the
/// report; configuration errors abort.
pub fn run_suite_with(reg: &InstanceRegistry, config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut reg = reg.clone();
    reg.disable(&config.disabled);
    let res = resolve(&reg, config)?;
    let mut checks = Vec::new();
    let mut timing = Timing::default();
    for check in config.all_checks() {
        let key = check.key();
        let expected = config.expect.get(&key).copied();
        let r = match run_check(&res, check, &config.scope) {
            Ok(v) => {
                add(&mut timing, &v.timing);
                let unexpected = expected.is_some_and(|e| e != v.status);
                CheckResult { key, verdict: Some(v), error: None, expected, unexpected }
            }
            Err(e @ (Error::Capability(_) | Error::ScopeExceeded(_))) => {
                CheckResult { key, verdict: None, error: Some(e.to_string()), expected, unexpected: expected.is_some() }
            }
            Err(e) => return Err(e),
        };
        checks.push(r);
    }
    let mut classifications = Vec::new();
    for (target, rel) in [(Target::Base, &res.base), (Target::Lift, &res.lift)] {
        if config.all_checks().iter().any(|c| matches!(c, Check::Axiom(t, _) if *t == target)) {
            classifications.push(classify(target, &rel.name, &checks));
        }
    }
    let findings = config.theorem.as_ref().map(|t| theorem_findings(t, &checks)).unwrap_or_default();
    Ok(SuiteReport {
        suite: config.name.clone(),
        tool_version: TOOL_VERSION.into(),
        scope: config.scope.clone(),
        relation: res.lift.name.clone(),
        functor: res.functor.as_ref().map(ConcreteFunctor::name),
        checks,
        classifications,
        findings,
        expected_classification: config.expect_classification.clone(),
        timing,
    })
}

fn add(total: &mut Timing, t: &Timing) {
    total.diagrams += t.diagrams;
    total.obligations += t.obligations;
    total.sampled_out += t.sampled_out;
    total.canonical += t.canonical;
    total.searched += t.searched;
    total.undecided += t.undecided;
    total.violations += t.violations;
}

fn theorem_findings(t: &super::config::Theorem, checks: &[CheckResult]) -> Vec<Finding> {
    let status = |c: &Check| checks.iter().find(|r| r.key == c.key()).and_then(CheckResult::status);
    let unmet: Vec<String> =
        t.hypotheses.iter().filter(|h| status(h) != Some(Status::HoldsWithinScope)).map(Check::key).collect();
    if !unmet.is_empty() {
        return vec![Finding {
            severity: Severity::Info,
            message: format!("{}: hypotheses not established within scope ({}); implication not tested", t.name, unmet.join(", ")),
        }];
    }
    let broken: Vec<String> = t.conclusions.iter().filter(|c| status(c) == Some(Status::Fails)).map(Check::key).collect();
    let open: Vec<String> =
        t.conclusions.iter().filter(|c| !matches!(status(c), Some(Status::HoldsWithinScope | Status::Fails))).map(Check::key).collect();
    let mut out = Vec::new();
    if !broken.is_empty() {
        out.push(Finding {
            severity: Severity::High,
            message: format!("{}: hypotheses hold but conclusions fail ({})", t.name, broken.join(", ")),
        });
    }
    if !open.is_empty() {
        out.push(Finding { severity: Severity::Info, message: format!("{}: conclusions undecided ({})", t.name, open.join(", ")) });
    }
    if out.is_empty() {
        out.push(Finding { severity: Severity::Info, message: format!("{}: implication confirmed within scope", t.name) });
    }
    out
}
