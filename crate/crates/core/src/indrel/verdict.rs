//! Three-valued check outcomes and the scope they were computed under.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cat::category::DEFAULT_HOM_CAP;
use crate::cat::{Diagram, Obstruction};
use crate::{Error, Result};

/// Bounds for one check. Sizes are carrier sizes, or dimensions for linear kinds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Scope {
    pub max_size: usize,
    /// Bound on objects introduced by a bounded completion search.
    pub completion_size: usize,
    /// Cap on the morphisms enumerated per hom-set.
    pub max_hom: usize,
    pub exhaustive: bool,
    pub seed: u64,
    /// Fraction of obligations evaluated when not exhaustive.
    pub sample_rate: f64,
    /// Completed diagrams visited per obligation before a search gives up.
    pub search_budget: usize,
}

pub const DEFAULT_SEARCH_BUDGET: usize = 20_000;

impl Default for Scope {
    fn default() -> Scope {
        Scope::new(3, 4)
    }
}

impl Scope {
    pub fn new(max_size: usize, completion_size: usize) -> Scope {
        Scope {
            max_size,
            completion_size,
            max_hom: DEFAULT_HOM_CAP,
            exhaustive: true,
            seed: 0,
            sample_rate: 1.0,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }

    pub fn sampled(mut self, seed: u64, rate: f64) -> Scope {
        self.exhaustive = false;
        self.seed = seed;
        self.sample_rate = rate;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_size == 0 || self.completion_size == 0 || self.max_hom == 0 || self.search_budget == 0 {
            return Err(Error::Contract("scope bounds must be positive".into()));
        }
        if !(self.sample_rate > 0.0 && self.sample_rate <= 1.0) {
            return Err(Error::Contract(format!("sample rate {} is outside (0, 1]", self.sample_rate)));
        }
        Ok(())
    }

    /// `None` when every obligation is evaluated.
    pub(crate) fn sampler(&self) -> Option<Sampler> {
        (!self.exhaustive && self.sample_rate < 1.0)
            .then(|| Sampler { rng: ChaCha8Rng::seed_from_u64(self.seed), rate: self.sample_rate })
    }
}

pub(crate) struct Sampler {
    rng: ChaCha8Rng,
    rate: f64,
}

impl Sampler {
    pub(crate) fn keep(&mut self) -> bool {
        self.rng.gen_bool(self.rate)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsWithinScope,
    Fails,
    Inconclusive,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::HoldsWithinScope => "holds-within-scope",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Why a witness violates an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// A universal axiom's conclusion is false on the witness.
    Violation { condition: String },
    /// No completion of the witness exists at any size.
    Impossible { obstruction: Obstruction },
}

/// Work counters; deterministic so reports are reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub diagrams: usize,
    pub obligations: usize,
    pub sampled_out: usize,
    pub canonical: usize,
    pub searched: usize,
    pub undecided: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub relation: String,
    pub axiom: String,
    pub status: Status,
    pub scope: Scope,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Diagram>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub timing: Timing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::HoldsWithinScope
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialize")
    }

    pub fn from_json(s: &str) -> Result<Verdict> {
        Ok(serde_json::from_str(s)?)
    }
}

type Key = (usize, Vec<usize>, Vec<usize>, Vec<Vec<u32>>);

fn keep_min(slot: &mut Option<(Key, Diagram)>, d: &Diagram) -> bool {
    if slot.as_ref().is_some_and(|(k, _)| d.total_size() > k.0) {
        return false;
    }
    let key = d.order_key();
    if slot.as_ref().is_none_or(|(k, _)| key < *k) {
        *slot = Some((key, d.clone()));
        true
    } else {
        false
    }
}

/// Deterministic reducer over obligation outcomes: the least counterexample by
/// [`Diagram::order_key`] wins, then the least undecided obligation.
#[derive(Default)]
pub struct Tally {
    pub timing: Timing,
    fail: Option<(Key, Diagram)>,
    certificate: Option<Certificate>,
    undecided: Option<(Key, Diagram)>,
    sample: Option<(Key, Diagram)>,
}

impl Tally {
    pub fn new() -> Tally {
        Tally::default()
    }

    /// Total size of the current counterexample; larger obligations cannot win.
    pub fn size_bound(&self) -> usize {
        self.fail.as_ref().map_or(usize::MAX, |(k, _)| k.0)
    }

    /// A discharged obligation; `witness` is its completion when there is one.
    pub fn holds(&mut self, witness: &Diagram) {
        self.timing.obligations += 1;
        keep_min(&mut self.sample, witness);
    }

    pub fn violated(&mut self, d: &Diagram, c: Certificate) {
        self.timing.obligations += 1;
        self.timing.violations += 1;
        if keep_min(&mut self.fail, d) {
            self.certificate = Some(c);
        }
    }

    pub fn undecided(&mut self, d: &Diagram) {
        self.timing.obligations += 1;
        self.timing.undecided += 1;
        keep_min(&mut self.undecided, d);
    }

    pub fn has_failure(&self) -> bool {
        self.fail.is_some()
    }

    pub fn verdict(self, relation: &str, axiom: &str, scope: &Scope, note: Option<String>) -> Verdict {
        let (status, witness, certificate, default_note) = if let Some((_, d)) = self.fail {
            (Status::Fails, Some(d), self.certificate, None)
        } else if let Some((_, d)) = self.undecided {
            (Status::Inconclusive, Some(d), None, Some("no completion found within the search bounds".to_string()))
        } else {
            let note = (self.timing.obligations == 0).then(|| "no non-vacuous obligation within scope".to_string());
            (Status::HoldsWithinScope, self.sample.map(|(_, d)| d), None, note)
        };
        Verdict {
            relation: relation.into(),
            axiom: axiom.into(),
            status,
            scope: scope.clone(),
            witness,
            certificate,
            timing: self.timing,
            note: default_note.or(note),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_validation() {
        assert!(Scope::new(3, 4).validate().is_ok());
        assert!(Scope::new(0, 4).validate().is_err());
        assert!(Scope::new(3, 4).sampled(1, 0.0).validate().is_err());
    }

    #[test]
    fn exhaustive_scopes_ignore_the_seed() {
        let mut s = Scope::new(3, 3);
        s.seed = 99;
        s.sample_rate = 0.5;
        assert!(s.sampler().is_none());
    }

    #[test]
    fn sampling_is_seeded() {
        let draw = |seed| {
            let mut s = Scope::new(3, 3).sampled(seed, 0.5).sampler().unwrap();
            (0..64).map(|_| s.keep()).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn status_tags_match_serialization() {
        for s in [Status::HoldsWithinScope, Status::Fails, Status::Inconclusive] {
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.tag()));
        }
    }
}
