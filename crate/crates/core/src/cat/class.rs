//! Distinguished classes of morphisms.

use serde::{Deserialize, Serialize};

use super::morphism::Morphism;
use crate::{Error, Result};

/// A decidable class of morphisms. Every shipped class is composable (closed under
/// composition, contains all isomorphisms) and left-cancellable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismClass {
    All,
    /// Injective on carriers; for the shipped kinds these are exactly the monomorphisms.
    Mono,
    /// Injective and reflecting edges (graph kinds); equal to `Mono` on other kinds.
    Emb,
    Surj,
    Iso,
}

impl MorphismClass {
    pub const ALL: [MorphismClass; 5] =
        [MorphismClass::All, MorphismClass::Mono, MorphismClass::Emb, MorphismClass::Surj, MorphismClass::Iso];

    pub fn name(self) -> &'static str {
        match self {
            MorphismClass::All => "all",
            MorphismClass::Mono => "mono",
            MorphismClass::Emb => "emb",
            MorphismClass::Surj => "surj",
            MorphismClass::Iso => "iso",
        }
    }

    pub fn parse(s: &str) -> Result<MorphismClass> {
        MorphismClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Unknown(format!("morphism class `{s}`")))
    }

    pub fn contains(self, m: &Morphism) -> bool {
        match self {
            MorphismClass::All => true,
            MorphismClass::Mono => m.is_injective(),
            MorphismClass::Emb => m.is_embedding(),
            MorphismClass::Surj => m.is_surjective(),
            MorphismClass::Iso => m.is_iso(),
        }
    }

    pub fn injective(self) -> bool {
        matches!(self, MorphismClass::Mono | MorphismClass::Emb | MorphismClass::Iso)
    }

    /// `self ⊆ other` as classes on every shipped kind.
    pub fn is_subclass_of(self, other: MorphismClass) -> bool {
        use MorphismClass::*;
        matches!(
            (self, other),
            (_, All) | (Iso, _) | (Emb, Mono) | (Mono, Mono) | (Emb, Emb) | (Surj, Surj)
        )
    }
}

impl std::fmt::Display for MorphismClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
