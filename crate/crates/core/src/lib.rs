//! Independence relations on finite concrete categories.
//!
//! The crate is organised in layers:
//!
//! * [`cat`]: finite concrete categories, hom-set enumeration, pullbacks,
//!   colimits, multipushouts, factorization systems and subobject joins.
//! * [`indrel`]: independence relations as square classifiers, together with
//!   bounded or exact checkers for every axiom, producing three-valued [`Verdict`]s.
//! * [`lifting`]: functors, lifted relations, completions, horn amalgamation and
//!   multi-reflections.
//! * [`instances`]: the registry of shipped categories, functors and relations.
//! * [`suite`]: config-driven suites, deterministic reports and fixture replay.
//!
//! [`Verdict`]: indrel::Verdict

pub mod cat;
pub mod indrel;
pub mod instances;
pub mod lifting;
pub mod suite;

/// Errors raised by constructions and checkers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("composition error: {0}")]
    Composition(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("kind error: {0}")]
    Kind(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("scope exceeded: {0}")]
    ScopeExceeded(String),
    #[error("missing capability: {0}")]
    Capability(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("unknown registry entry: {0}")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("replay mismatch: {0}")]
    Replay(String),
    #[error("unsupported field order {0}; shipped orders are 2, 3, 4, 5")]
    UnsupportedField(u8),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
