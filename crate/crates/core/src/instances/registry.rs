use std::collections::BTreeMap;

use serde::Serialize;

use super::relations::{relation_bil_star, relation_binfunc, relation_linbil, relation_linvec};
use crate::cat::field::SUPPORTED_ORDERS;
use crate::cat::{Category, MorphismClass};
use crate::indrel::{pullback_relation, Relation};
use crate::lifting::{lift_relation, ConcreteFunctor, Functor};
use crate::{Error, Result};

/// A category together with the morphism classes it is used with.
#[derive(Clone, Debug, Serialize)]
pub struct CategoryEntry {
    pub name: String,
    pub category: Category,
    pub classes: Vec<MorphismClass>,
}

/// Immutable table of the shipped categories, functors and relations.
#[derive(Clone, Debug)]
pub struct InstanceRegistry {
    categories: BTreeMap<String, CategoryEntry>,
    functors: BTreeMap<String, ConcreteFunctor>,
    relations: BTreeMap<String, Relation>,
}

fn base_categories(q: u8) -> Vec<(Category, Vec<MorphismClass>)> {
    use MorphismClass::*;
    vec![
        (Category::FinSet, vec![All, Mono]),
        (Category::FinGraph, vec![All, Mono, Emb]),
        (Category::FinVec(q), vec![All, Mono]),
        (Category::FinBil(q), vec![All, Mono, Emb]),
        (Category::FinBinFunc(q), vec![All, Mono]),
        (Category::SigmaSet, vec![All, Mono]),
        (Category::SigmaGraph, vec![All, Mono, Emb]),
        (Category::ConnGraph, vec![All, Mono, Emb]),
    ]
}

fn functors(q: u8) -> Result<Vec<(String, ConcreteFunctor)>> {
    use MorphismClass::*;
    let vec = ConcreteFunctor::new(Functor::BilToVec(q), Mono, Mono);
    let bin = ConcreteFunctor::new(Functor::BilToBinFunc(q), Mono, Mono);
    let pair = ConcreteFunctor::product(vec![vec.clone(), bin.clone()])?;
    Ok(vec![
        (format!("bil-to-vec-{q}"), vec),
        (format!("bil-to-binfunc-{q}"), bin),
        (format!("bil-pair-{q}"), pair),
        ("graph-to-set".into(), ConcreteFunctor::new(Functor::GraphToSet, Emb, Mono)),
        ("sigma-graph-to-graph".into(), ConcreteFunctor::new(Functor::SigmaGraphToGraph, Emb, Emb)),
        ("sigma-set-to-set".into(), ConcreteFunctor::new(Functor::SigmaSetToSet, Mono, Mono)),
        ("conn-graph-to-graph".into(), ConcreteFunctor::new(Functor::ConnInclusion, Emb, Emb)),
    ])
}

impl InstanceRegistry {
    /// Everything over the field of order 2.
    pub fn standard() -> InstanceRegistry {
        InstanceRegistry::with_fields(&[2]).expect("the field of order 2 is shipped")
    }

    /// Every shipped field order.
    pub fn full() -> InstanceRegistry {
        InstanceRegistry::with_fields(&SUPPORTED_ORDERS).expect("shipped orders")
    }

    pub fn with_fields(qs: &[u8]) -> Result<InstanceRegistry> {
        let mut reg = InstanceRegistry { categories: BTreeMap::new(), functors: BTreeMap::new(), relations: BTreeMap::new() };
        for &q in qs {
            relation_linvec(q)?;
            for (category, classes) in base_categories(q) {
                let name = category.name();
                reg.categories.insert(name.clone(), CategoryEntry { name, category, classes });
            }
            for rel in [relation_linvec(q)?, relation_linbil(q)?, relation_bil_star(q)?, relation_binfunc(q)?] {
                reg.relations.insert(rel.name.clone(), rel);
            }
            reg.functors.extend(functors(q)?);
        }
        let pullbacks: Vec<Relation> = reg
            .categories
            .values()
            .filter(|e| e.category.capabilities().pullback)
            .flat_map(|e| e.classes.iter().map(|&c| pullback_relation(&e.category, c)))
            .collect::<Result<_>>()?;
        for rel in pullbacks {
            reg.relations.insert(rel.name.clone(), rel);
        }
        let conn = &reg.functors["conn-graph-to-graph"];
        let lifted = lift_relation(conn, &reg.relations["pullback[fin-graph/emb]"])?;
        reg.relations.insert(lifted.name.clone(), lifted);
        Ok(reg)
    }

    pub fn categories(&self) -> impl Iterator<Item = &CategoryEntry> {
        self.categories.values()
    }

    pub fn functors(&self) -> impl Iterator<Item = (&str, &ConcreteFunctor)> {
        self.functors.iter().map(|(k, f)| (k.as_str(), f))
    }

    pub fn relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.values()
    }

    /// A registered category, or a product `a*b` or coproduct `coprod(a,b,..)` of
    /// registered ones.
    pub fn category(&self, name: &str) -> Result<Category> {
        let name = name.trim();
        if let Some(e) = self.categories.get(name) {
            return Ok(e.category.clone());
        }
        if let Some(inner) = name.strip_prefix("coprod(").and_then(|s| s.strip_suffix(')')) {
            let parts = split_top(inner, ',');
            if parts.len() < 2 {
                return Err(Error::Parse(format!("coproduct `{name}` needs two summands")));
            }
            return Ok(Category::Coproduct(parts.iter().map(|p| self.category(p)).collect::<Result<_>>()?));
        }
        let parts = split_top(name, '*');
        if parts.len() == 2 {
            return Ok(Category::Product(Box::new(self.category(parts[0])?), Box::new(self.category(parts[1])?)));
        }
        Err(Error::Unknown(format!("category `{name}`")))
    }

    /// The category and class addressed by name; the class must be registered for
    /// every base factor.
    pub fn class(&self, category: &str, class: &str) -> Result<(Category, MorphismClass)> {
        let cat = self.category(category)?;
        let cls = MorphismClass::parse(class)?;
        if !self.supports(&cat, cls) {
            return Err(Error::Unknown(format!("class `{class}` on {category}")));
        }
        Ok((cat, cls))
    }

    fn supports(&self, cat: &Category, cls: MorphismClass) -> bool {
        match cat {
            Category::Product(l, r) => self.supports(l, cls) && self.supports(r, cls),
            Category::Coproduct(cs) => cs.iter().all(|c| self.supports(c, cls)),
            c => self.categories.get(&c.name()).is_some_and(|e| e.classes.contains(&cls)),
        }
    }

    /// Remove entries by name, with every functor and relation on a removed
    /// category; unknown names are ignored.
    pub fn disable(&mut self, names: &[String]) {
        for n in names {
            self.categories.remove(n);
            self.functors.remove(n);
            self.relations.remove(n);
        }
        let gone = |c: &Category| names.iter().any(|n| *n == c.name());
        self.functors.retain(|_, f| !gone(&f.dom()) && !gone(&f.cod()));
        self.relations.retain(|_, r| !gone(&r.category));
    }

    pub fn functor(&self, name: &str) -> Result<&ConcreteFunctor> {
        self.functors.get(name).ok_or_else(|| Error::Unknown(format!("functor `{name}`")))
    }

    pub fn relation(&self, name: &str) -> Result<&Relation> {
        self.relations.get(name).ok_or_else(|| Error::Unknown(format!("relation `{name}`")))
    }

    /// Resolve `kind` (pullback, lin, star, zero) on a category and class, then lift
    /// it along `functor` when one is given; `identity` names the identity functor.
    pub fn resolve(&self, kind: &str, category: &str, class: &str, functor: Option<&str>) -> Result<Relation> {
        let (cat, cls) = self.class(category, class)?;
        let base = match kind {
            "pullback" => pullback_relation(&cat, cls)?,
            "lin" | "star" | "zero" => {
                let rel = self
                    .relations
                    .get(&format!("{kind}[{}]", cat.name()))
                    .ok_or_else(|| Error::Unknown(format!("relation `{kind}` on {category}")))?;
                if rel.cls != cls && !(rel.cls.injective() && cls.injective() && same_injective_classes(&cat)) {
                    return Err(Error::Unknown(format!("relation `{kind}` on {category}/{class}")));
                }
                Relation { cls, ..rel.clone() }
            }
            _ => return Err(Error::Unknown(format!("relation kind `{kind}`"))),
        };
        match functor {
            None => Ok(base),
            Some("identity") => lift_relation(&ConcreteFunctor::new(Functor::Identity(cat), cls, cls), &base),
            Some(name) => lift_relation(self.functor(name)?, &base),
        }
    }
}

/// Kinds whose injective morphisms are all embeddings.
fn same_injective_classes(cat: &Category) -> bool {
    matches!(cat, Category::FinSet | Category::FinVec(_) | Category::FinBil(_) | Category::FinBinFunc(_) | Category::SigmaSet)
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}
