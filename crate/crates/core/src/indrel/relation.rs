//! Independence relations as classifiers of commuting squares.

use std::collections::BTreeSet;

use crate::cat::limits::is_pullback;
use crate::cat::{Category, Morphism, MorphismClass, Square};
use crate::lifting::Functor;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelKind {
    /// Pullback squares; with `require_mono` only those whose four morphisms are
    /// injective.
    Pullback { require_mono: bool },
    /// `im(A) ∩ im(B) = im(C)` inside `M`.
    Intersection,
    /// Intersection plus the form (or binary function) vanishing both ways on
    /// `(A∖C) × (B∖C)`.
    FormZero,
    All,
    /// `F⁻¹(inner)`.
    Lift(Box<Functor>, Box<Relation>),
    Intersect(Vec<Relation>),
    /// Componentwise on a product category.
    Product(Box<Relation>, Box<Relation>),
}

/// An independence relation on `category` restricted to morphisms in `cls`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub name: String,
    pub category: Category,
    pub cls: MorphismClass,
    pub kind: RelKind,
}

impl Relation {
    pub fn new(name: impl Into<String>, category: Category, cls: MorphismClass, kind: RelKind) -> Relation {
        Relation { name: name.into(), category, cls, kind }
    }

    /// Whether the commuting square `sq`, with morphisms in `cls`, is independent.
    pub fn classify(&self, sq: &Square) -> Result<bool> {
        if !sq.commutes() {
            return Err(Error::MalformedDiagram("square does not commute".into()));
        }
        if let Some(m) = sq.morphisms().iter().find(|m| !self.cls.contains(m)) {
            return Err(Error::Contract(format!(
                "{} classifies {} squares; got {:?}",
                self.name,
                self.cls.name(),
                m.map()
            )));
        }
        self.decide(sq)
    }

    /// Classification without the input contract checks.
    pub(crate) fn decide(&self, sq: &Square) -> Result<bool> {
        match &self.kind {
            RelKind::All => Ok(true),
            RelKind::Pullback { require_mono } => {
                if *require_mono && !sq.morphisms().iter().all(|m| m.is_injective()) {
                    return Ok(false);
                }
                is_pullback(&self.category, sq)
            }
            RelKind::Intersection => Ok(meets_in_base(sq)),
            RelKind::FormZero => {
                if !meets_in_base(sq) {
                    return Ok(false);
                }
                let base: BTreeSet<u32> = composite_image(&sq.ca, &sq.am);
                let xs: Vec<u32> = sq.am.image().into_iter().filter(|x| !base.contains(x)).collect();
                let ys: Vec<u32> = sq.bm.image().into_iter().filter(|y| !base.contains(y)).collect();
                let m = sq.m();
                Ok(xs.iter().all(|&x| ys.iter().all(|&y| m.form(x, y) == 0 && m.form(y, x) == 0)))
            }
            RelKind::Lift(f, inner) => inner.decide(&f.square(sq)?),
            RelKind::Intersect(rels) => {
                for r in rels {
                    if !r.decide(sq)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            RelKind::Product(l, r) => {
                let parts = sq
                    .morphisms()
                    .iter()
                    .map(|m| m.split().ok_or_else(|| Error::Kind("expected a product square".into())))
                    .collect::<Result<Vec<_>>>()?;
                let left = Square::new(parts[0].0.clone(), parts[1].0.clone(), parts[2].0.clone(), parts[3].0.clone())?;
                let right = Square::new(parts[0].1.clone(), parts[1].1.clone(), parts[2].1.clone(), parts[3].1.clone())?;
                Ok(l.decide(&left)? && r.decide(&right)?)
            }
        }
    }
}

fn composite_image(f: &Morphism, g: &Morphism) -> BTreeSet<u32> {
    f.map().iter().map(|&x| g.apply(x)).collect()
}

fn meets_in_base(sq: &Square) -> bool {
    let a: BTreeSet<u32> = sq.am.image().into_iter().collect();
    let meet: BTreeSet<u32> = sq.bm.image().into_iter().filter(|y| a.contains(y)).collect();
    meet == composite_image(&sq.ca, &sq.am)
}

/// Pullback squares of `cat` with morphisms in `cls`.
pub fn pullback_relation(cat: &Category, cls: MorphismClass) -> Result<Relation> {
    if !cat.capabilities().pullback {
        return Err(Error::Capability(format!("{} has no pullbacks", cat.name())));
    }
    Ok(Relation::new(
        format!("pullback[{}/{}]", cat.name(), cls.name()),
        cat.clone(),
        cls,
        RelKind::Pullback { require_mono: !cls.injective() },
    ))
}

/// Conjunction of relations on one category and class.
pub fn intersect_relations(rels: Vec<Relation>) -> Result<Relation> {
    let first = rels.first().ok_or_else(|| Error::Contract("no relations to intersect".into()))?;
    if let Some(r) = rels.iter().find(|r| r.category != first.category || r.cls != first.cls) {
        return Err(Error::Contract(format!("{} and {} live on different categories", first.name, r.name)));
    }
    if rels.len() == 1 {
        return Ok(rels.into_iter().next().unwrap());
    }
    let name = format!("meet({})", rels.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(","));
    let (category, cls) = (first.category.clone(), first.cls);
    Ok(Relation::new(name, category, cls, RelKind::Intersect(rels)))
}

/// Whether `sq` is independent, with the input contract checked.
pub fn is_independent(rel: &Relation, sq: &Square) -> Result<bool> {
    rel.classify(sq)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cat::Obj;

    fn arc(o: Obj) -> Arc<Obj> {
        Arc::new(o)
    }

    fn set_square(a: u32, b: u32, m: u32, am: Vec<u32>, bm: Vec<u32>) -> Square {
        let (c, a, b, m) = (arc(Obj::set(0)), arc(Obj::set(a)), arc(Obj::set(b)), arc(Obj::set(m)));
        Square::new(
            Morphism::new(c.clone(), a.clone(), vec![]).unwrap(),
            Morphism::new(c, b.clone(), vec![]).unwrap(),
            Morphism::new(a, m.clone(), am).unwrap(),
            Morphism::new(b, m, bm).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn disjoint_points_are_independent_over_empty() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        assert!(rel.classify(&set_square(1, 1, 2, vec![0], vec![1])).unwrap());
        assert!(!rel.classify(&set_square(1, 1, 1, vec![0], vec![0])).unwrap());
    }

    #[test]
    fn class_contract_is_enforced() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let sq = set_square(2, 0, 1, vec![0, 0], vec![]);
        assert!(matches!(rel.classify(&sq), Err(Error::Contract(_))));
    }

    #[test]
    fn distinct_lines_meet_in_zero() {
        let (z, l, p) = (arc(Obj::vec(2, 0)), arc(Obj::vec(2, 1)), arc(Obj::vec(2, 2)));
        let rel = Relation::new("lin", Category::FinVec(2), MorphismClass::Mono, RelKind::Intersection);
        let sq = Square::new(
            Morphism::new(z.clone(), l.clone(), vec![0]).unwrap(),
            Morphism::new(z, l.clone(), vec![0]).unwrap(),
            Morphism::new(l.clone(), p.clone(), vec![0, 1]).unwrap(),
            Morphism::new(l, p, vec![0, 2]).unwrap(),
        )
        .unwrap();
        assert!(rel.classify(&sq).unwrap());
        let same = Square::new(sq.ca.clone(), sq.cb.clone(), sq.am.clone(), sq.am.clone()).unwrap();
        assert!(!rel.classify(&same).unwrap());
    }

    #[test]
    fn intersecting_with_all_is_neutral() {
        let r = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let all = Relation::new("all", Category::FinSet, MorphismClass::Mono, RelKind::All);
        let meet = intersect_relations(vec![r.clone(), all]).unwrap();
        for sq in [set_square(1, 1, 2, vec![0], vec![1]), set_square(1, 1, 1, vec![0], vec![0])] {
            assert_eq!(meet.classify(&sq).unwrap(), r.classify(&sq).unwrap());
        }
        assert_eq!(intersect_relations(vec![r.clone()]).unwrap(), r);
        let other = Relation::new("g", Category::FinGraph, MorphismClass::Mono, RelKind::All);
        assert!(matches!(intersect_relations(vec![r, other]), Err(Error::Contract(_))));
    }
}
