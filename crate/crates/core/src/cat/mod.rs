//! Finite concrete categories and their diagram algebra.

pub mod category;
pub mod colimit;
pub mod class;
pub mod diagram;
pub mod enumerate;
pub mod factor;
pub mod field;
pub mod limits;
pub mod linalg;
pub mod morphism;
pub mod multipushout;
pub mod object;

pub use category::{Capabilities, Category};
pub use class::MorphismClass;
pub use diagram::{is_commuting_square, Arrow, Cospan, Diagram, Span, Square};
pub use enumerate::{EnumStats, Enumerator, NodeDomain, Shape};
pub use field::Field;
pub use morphism::Morphism;
pub use object::Obj;
pub use colimit::{colimit, glue, FormEntry, GlueError, Glued, Gluing, Obstruction};
pub use factor::{factorize, generated, join_bruteforce, join_via_multipushout, subobjects_of, FactorizationSystem, Subobject};
pub use limits::{is_pullback, pullback};
pub use multipushout::{count_factorizations, multipushout, multipushout_violation};
