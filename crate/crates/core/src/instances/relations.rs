//! The shipped independence relations on linear and form-carrying kinds.

use crate::cat::{Category, Field, MorphismClass, Shape};
use crate::indrel::{Certificate, RelKind, Relation, Scope, Tally, Verdict};
use crate::lifting::lift::{sweep, SQUARE, SQUARE_EDGES};
use crate::{Error, Result};

fn field(q: u8) -> Result<u8> {
    Field::get(q).map(|_| q)
}

/// `A ⊥ B over C` iff `im(A) ∩ im(B) = im(C)` inside `M`, on injective linear maps.
pub fn relation_linvec(q: u8) -> Result<Relation> {
    let q = field(q)?;
    Ok(Relation::new(format!("lin[fin-vec-{q}]"), Category::FinVec(q), MorphismClass::Mono, RelKind::Intersection))
}

/// The subspace-intersection relation read on bilinear spaces, ignoring the form.
pub fn relation_linbil(q: u8) -> Result<Relation> {
    let q = field(q)?;
    Ok(Relation::new(format!("lin[fin-bil-{q}]"), Category::FinBil(q), MorphismClass::Mono, RelKind::Intersection))
}

/// Intersection plus `[a, b] = [b, a] = 0` for `a ∈ A∖C`, `b ∈ B∖C`.
pub fn relation_bil_star(q: u8) -> Result<Relation> {
    let q = field(q)?;
    Ok(Relation::new(format!("star[fin-bil-{q}]"), Category::FinBil(q), MorphismClass::Emb, RelKind::FormZero))
}

/// Intersection plus `f(a, b) = f(b, a) = 0` off the base.
pub fn relation_binfunc(q: u8) -> Result<Relation> {
    let q = field(q)?;
    Ok(Relation::new(
        format!("zero[fin-binfunc-{q}]"),
        Category::FinBinFunc(q),
        MorphismClass::Mono,
        RelKind::FormZero,
    ))
}

/// Extensional comparison of two relations on one category: every commuting square
/// in either class must lie in the other class and be classified alike.
pub fn compare_relations(left: &Relation, right: &Relation, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    if left.category != right.category {
        return Err(Error::Contract(format!(
            "{} lives on {}, {} on {}",
            left.name,
            left.category.name(),
            right.name,
            right.category.name()
        )));
    }
    let mut tally = Tally::new();
    for (this, other) in [(left, right), (right, left)] {
        sweep(&this.category, Shape::new(&SQUARE, &SQUARE_EDGES), this.cls, scope, &mut tally, |d, t| {
            let sq = d.square("C", "A", "B", "M")?;
            if sq.morphisms().iter().any(|m| !other.cls.contains(m)) {
                let condition = format!("square lies in {} but not in {}", this.cls.name(), other.cls.name());
                t.violated(d, Certificate::Violation { condition });
                return Ok(());
            }
            let (x, y) = (this.decide(&sq)?, other.decide(&sq)?);
            if x == y {
                t.holds(d);
            } else {
                let condition = format!("{} says {x}, {} says {y}", this.name, other.name);
                t.violated(d, Certificate::Violation { condition });
            }
            Ok(())
        })?;
        if left.cls == right.cls {
            break;
        }
    }
    Ok(tally.verdict(&format!("{}={}", left.name, right.name), "extensional-agreement", scope, None))
}
