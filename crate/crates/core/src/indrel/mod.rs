//! Independence relations and their axioms.

pub mod axioms;
pub mod relation;
pub mod verdict;

pub use axioms::{amalgamate_squares, check_axiom, evaluate, obligation, replay, Axiom, Outcome, Via};
pub use relation::{intersect_relations, is_independent, pullback_relation, RelKind, Relation};
pub use verdict::{Certificate, Scope, Status, Tally, Timing, Verdict};
