//! Shipped suites. Theorem suites pair the hypotheses of a lifting theorem with
//! its conclusions; the others pin known verdicts.

use super::config::{Check, FunctorCheck, RelationRef, SuiteConfig, Target, Theorem};
use super::report::NSOP1_AXIOMS;
use crate::indrel::{Axiom, Scope, Status};
use crate::{Error, Result};

pub const SUITES: [&str; 9] = [
    "finset-mono-stable",
    "graph-lift",
    "finset-all-invariance",
    "bil-star-uniqueness",
    "bil-lin-uniqueness",
    "bil-lift",
    "sigma-graph-lift",
    "conn-graph-simple",
    "identity-lift",
];

fn on(target: Target, axioms: &[Axiom]) -> Vec<Check> {
    axioms.iter().map(|&a| Check::Axiom(target, a)).collect()
}

fn simple_axioms() -> Vec<Axiom> {
    let mut v = NSOP1_AXIOMS.to_vec();
    v.push(Axiom::BaseMonotonicity);
    v
}

fn expect_all(c: &mut SuiteConfig, status: Status) {
    for k in c.all_checks() {
        c.expect.insert(k.key(), status);
    }
}

/// The shipped suite called `name`.
pub fn builtin_suite(name: &str) -> Result<SuiteConfig> {
    use FunctorCheck::*;
    let c = match name {
        "finset-mono-stable" => {
            let mut c = SuiteConfig::new(name, RelationRef::new("pullback", "fin-set", "mono"), Scope::new(4, 8));
            c.checks = on(Target::Lift, &Axiom::ALL);
            expect_all(&mut c, Status::HoldsWithinScope);
            c.expect_classification = Some("stable-within-scope".into());
            c
        }
        "graph-lift" => {
            let mut c = SuiteConfig::new(name, RelationRef::new("pullback", "fin-set", "mono"), Scope::new(4, 6));
            c.functor = Some("graph-to-set".into());
            c.checks = on(Target::Lift, &Axiom::ALL);
            expect_all(&mut c, Status::HoldsWithinScope);
            c.expect.insert(Check::Axiom(Target::Lift, Axiom::Uniqueness).key(), Status::Fails);
            c.expect_classification = Some("simple-within-scope".into());
            c
        }
        "finset-all-invariance" => {
            let mut c = SuiteConfig::new(name, RelationRef::new("pullback", "fin-set", "all"), Scope::new(3, 4));
            c.checks = on(Target::Lift, &[Axiom::Invariance, Axiom::SemiInvariance]);
            c.expect.insert(Check::Axiom(Target::Lift, Axiom::Invariance).key(), Status::Fails);
            c.expect.insert(Check::Axiom(Target::Lift, Axiom::SemiInvariance).key(), Status::HoldsWithinScope);
            c
        }
        "bil-star-uniqueness" | "bil-lin-uniqueness" => {
            let (kind, class, status) = match name {
                "bil-star-uniqueness" => ("star", "emb", Status::HoldsWithinScope),
                _ => ("lin", "mono", Status::Fails),
            };
            let mut c = SuiteConfig::new(name, RelationRef::new(kind, "fin-bil-2", class), Scope::new(3, 3));
            c.checks = on(Target::Lift, &[Axiom::Uniqueness]);
            expect_all(&mut c, status);
            c
        }
        "bil-lift" => {
            let mut c = SuiteConfig::new(name, RelationRef::new("lin", "fin-vec-2", "mono"), Scope::new(2, 2));
            c.functor = Some("bil-to-vec-2".into());
            let mut hypotheses = on(Target::Base, &simple_axioms());
            hypotheses.extend([Laws, AdmitsCompletions(2), PreservesJoins, HornAmalgamation].map(Check::Functor));
            c.theorem = Some(Theorem { name: "lift-everything (simple)".into(), hypotheses, conclusions: on(Target::Lift, &simple_axioms()) });
            c.checks = on(Target::Lift, &[Axiom::Uniqueness]);
            expect_all(&mut c, Status::HoldsWithinScope);
            c.expect.insert(Check::Axiom(Target::Lift, Axiom::Uniqueness).key(), Status::Fails);
            c.expect_classification = Some("simple-within-scope".into());
            c
        }
        "sigma-graph-lift" => {
            let mut c = SuiteConfig::new(name, RelationRef::new("pullback", "fin-graph", "emb"), Scope::new(4, 3));
            c.functor = Some("sigma-graph-to-graph".into());
            c.checks = vec![Check::Functor(PreservesJoins), Check::Functor(AdmitsCompletions(2))];
            c.expect.insert(Check::Functor(PreservesJoins).key(), Status::HoldsWithinScope);
            c.expect.insert(Check::Functor(AdmitsCompletions(2)).key(), Status::Fails);
            c
        }
        "conn-graph-simple" => {
            let mut c = SuiteConfig::new(name, RelationRef::new("pullback", "fin-graph", "emb"), Scope::new(3, 4));
            c.functor = Some("conn-graph-to-graph".into());
            let mut hypotheses = on(Target::Base, &simple_axioms());
            hypotheses.extend([Laws, MultiReflection, ReflectsAmalgamation].map(Check::Functor));
            c.theorem = Some(Theorem {
                name: "left-multiadjoint-lifts-simplicity".into(),
                hypotheses,
                conclusions: on(Target::Lift, &simple_axioms()),
            });
            expect_all(&mut c, Status::HoldsWithinScope);
            c.expect_classification = Some("simple-within-scope".into());
            c
        }
        "identity-lift" => {
            let mut c = SuiteConfig::new(name, RelationRef::new("pullback", "fin-set", "mono"), Scope::new(3, 4));
            c.functor = Some("identity".into());
            c.checks = on(Target::Lift, &[Axiom::Symmetry, Axiom::Existence, Axiom::Uniqueness]);
            expect_all(&mut c, Status::HoldsWithinScope);
            c
        }
        _ => return Err(Error::Unknown(format!("suite `{name}`"))),
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_validates() {
        for name in SUITES {
            let c = builtin_suite(name).unwrap();
            c.validate().unwrap();
            assert_eq!(SuiteConfig::from_json(&c.to_json()).unwrap(), c);
        }
        assert!(matches!(builtin_suite("nope"), Err(Error::Unknown(_))));
    }
}
