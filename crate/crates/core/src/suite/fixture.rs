use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::RelationRef;
use crate::cat::{Diagram, Obj};
use crate::indrel::{check_axiom, replay, Axiom, Scope, Verdict};
use crate::instances::InstanceRegistry;
use crate::lifting::{find_completion, CompletionRequest};
use crate::{Error, Result};

/// A stored verdict together with what is needed to recompute it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Fixture {
    Axiom {
        relation: RelationRef,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        functor: Option<String>,
        verdict: Verdict,
    },
    Completion {
        /// The relation on the functor's codomain.
        relation: RelationRef,
        functor: String,
        dim: u8,
        base: Diagram,
        target: Obj,
        legs: Vec<(String, Vec<u32>)>,
        verdict: Verdict,
    },
}

impl Fixture {
    pub fn record_axiom(relation: RelationRef, functor: Option<&str>, axiom: Axiom, scope: &Scope) -> Result<Fixture> {
        let rel = InstanceRegistry::full().resolve(&relation.kind, &relation.category, &relation.class, functor)?;
        let verdict = check_axiom(&rel, axiom, scope)?;
        Ok(Fixture::Axiom { relation, functor: functor.map(str::to_string), verdict })
    }

    pub fn record_completion(
        relation: RelationRef,
        functor: &str,
        req: &CompletionRequest,
        scope: &Scope,
    ) -> Result<Fixture> {
        let verdict = solve(&relation, functor, req, scope)?;
        Ok(Fixture::Completion {
            relation,
            functor: functor.into(),
            dim: req.dim,
            base: req.base.clone(),
            target: (*req.target).clone(),
            legs: req.into_target.clone(),
            verdict,
        })
    }

    pub fn verdict(&self) -> &Verdict {
        match self {
            Fixture::Axiom { verdict, .. } | Fixture::Completion { verdict, .. } => verdict,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixtures serialize");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Fixture> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }

    /// Recompute the stored verdict's witness and certificate.
    pub fn replay(&self) -> Result<Verdict> {
        let reg = InstanceRegistry::full();
        match self {
            Fixture::Axiom { relation, functor, verdict } => {
                let rel = reg.resolve(&relation.kind, &relation.category, &relation.class, functor.as_deref())?;
                if rel.name != verdict.relation {
                    return Err(Error::Replay(format!("fixture names {}, registry resolves {}", verdict.relation, rel.name)));
                }
                if !replay(&rel, verdict)? {
                    return Err(Error::Replay(format!("{} {} no longer reproduces {}", verdict.relation, verdict.axiom, verdict.status.tag())));
                }
            }
            Fixture::Completion { relation, functor, dim, base, target, legs, verdict } => {
                let legs = legs.iter().map(|(l, m)| (l.as_str(), m.clone())).collect();
                let req = CompletionRequest::new(*dim, base.clone(), target.clone(), legs)?;
                let fresh = solve(relation, functor, &req, &verdict.scope)?;
                if (fresh.status, &fresh.certificate) != (verdict.status, &verdict.certificate) {
                    return Err(Error::Replay(format!(
                        "{}-completion now {} (stored {})",
                        dim,
                        fresh.status.tag(),
                        verdict.status.tag()
                    )));
                }
            }
        }
        Ok(self.verdict().clone())
    }
}

fn solve(relation: &RelationRef, functor: &str, req: &CompletionRequest, scope: &Scope) -> Result<Verdict> {
    let reg = InstanceRegistry::full();
    let rel = reg.resolve(&relation.kind, &relation.category, &relation.class, None)?;
    Ok(find_completion(reg.functor(functor)?, &rel, req, scope)?.0)
}

/// Load a fixture and check that it reproduces its stored status.
pub fn replay_fixture(path: &Path) -> Result<Verdict> {
    Fixture::load(path)?.replay()
}
