//! Concrete functors between the shipped categories.

use std::sync::Arc;

use serde::Serialize;

use crate::cat::{Arrow, Category, Diagram, Morphism, MorphismClass, Obj, Square};
use crate::{Error, Result};

/// Declared properties, verified separately on scope.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorProps {
    pub faithful: bool,
    pub preserves_directed_colimits: bool,
    pub preserves_joins: bool,
    pub reduct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Functor {
    Identity(Category),
    /// Underlying vertex set of a graph.
    GraphToSet,
    /// Underlying vector space of a bilinear space.
    BilToVec(u8),
    /// Underlying set of vectors with the form as a binary function.
    BilToBinFunc(u8),
    SigmaGraphToGraph,
    SigmaSetToSet,
    /// Inclusion of connected graphs into graphs.
    ConnInclusion,
    /// Identity on each summand of a coproduct of copies of one category.
    CoproductFold(Category, usize),
    /// `⟨F, G⟩` into the product of the codomains.
    Pair(Box<Functor>, Box<Functor>),
    /// `second ∘ first`.
    Compose(Box<Functor>, Box<Functor>),
}

impl Functor {
    /// `⟨F_1, ..., F_n⟩`, nested to the right; a single functor is returned as is.
    pub fn product(fs: Vec<Functor>) -> Result<Functor> {
        let mut it = fs.into_iter().rev();
        let mut acc = it.next().ok_or_else(|| Error::Contract("empty functor list".into()))?;
        for f in it {
            if f.dom() != acc.dom() {
                return Err(Error::Contract(format!("{} and {} have different domains", f.name(), acc.name())));
            }
            acc = Functor::Pair(Box::new(f), Box::new(acc));
        }
        Ok(acc)
    }

    /// `second ∘ first`.
    pub fn compose(first: Functor, second: Functor) -> Result<Functor> {
        if first.cod() != second.dom() {
            return Err(Error::Contract(format!("{} does not compose with {}", first.name(), second.name())));
        }
        Ok(Functor::Compose(Box::new(first), Box::new(second)))
    }

    pub fn name(&self) -> String {
        match self {
            Functor::Identity(c) => format!("id-{}", c.name()),
            Functor::GraphToSet => "graph-to-set".into(),
            Functor::BilToVec(q) => format!("bil-to-vec-{q}"),
            Functor::BilToBinFunc(q) => format!("bil-to-binfunc-{q}"),
            Functor::SigmaGraphToGraph => "sigma-graph-to-graph".into(),
            Functor::SigmaSetToSet => "sigma-set-to-set".into(),
            Functor::ConnInclusion => "conn-graph-to-graph".into(),
            Functor::CoproductFold(c, n) => format!("fold-{n}-{}", c.name()),
            Functor::Pair(f, g) => format!("<{},{}>", f.name(), g.name()),
            Functor::Compose(f, g) => format!("{}.{}", g.name(), f.name()),
        }
    }

    pub fn dom(&self) -> Category {
        match self {
            Functor::Identity(c) => c.clone(),
            Functor::GraphToSet => Category::FinGraph,
            Functor::BilToVec(q) | Functor::BilToBinFunc(q) => Category::FinBil(*q),
            Functor::SigmaGraphToGraph => Category::SigmaGraph,
            Functor::SigmaSetToSet => Category::SigmaSet,
            Functor::ConnInclusion => Category::ConnGraph,
            Functor::CoproductFold(c, n) => Category::Coproduct(vec![c.clone(); *n]),
            Functor::Pair(f, _) => f.dom(),
            Functor::Compose(f, _) => f.dom(),
        }
    }

    pub fn cod(&self) -> Category {
        match self {
            Functor::Identity(c) => c.clone(),
            Functor::GraphToSet | Functor::SigmaSetToSet => Category::FinSet,
            Functor::BilToVec(q) => Category::FinVec(*q),
            Functor::BilToBinFunc(q) => Category::FinBinFunc(*q),
            Functor::SigmaGraphToGraph | Functor::ConnInclusion => Category::FinGraph,
            Functor::CoproductFold(c, _) => c.clone(),
            Functor::Pair(f, g) => Category::Product(Box::new(f.cod()), Box::new(g.cod())),
            Functor::Compose(_, g) => g.cod(),
        }
    }

    pub fn props(&self) -> FunctorProps {
        let all = FunctorProps { faithful: true, preserves_directed_colimits: true, preserves_joins: true, reduct: true };
        match self {
            Functor::Compose(f, g) => {
                let (a, b) = (f.props(), g.props());
                FunctorProps {
                    faithful: a.faithful && b.faithful,
                    preserves_directed_colimits: a.preserves_directed_colimits && b.preserves_directed_colimits,
                    preserves_joins: a.preserves_joins && b.preserves_joins,
                    reduct: a.reduct && b.reduct,
                }
            }
            Functor::Pair(f, g) => {
                let (a, b) = (f.props(), g.props());
                FunctorProps {
                    faithful: a.faithful || b.faithful,
                    preserves_directed_colimits: a.preserves_directed_colimits && b.preserves_directed_colimits,
                    preserves_joins: a.preserves_joins && b.preserves_joins,
                    reduct: (a.faithful || b.faithful) && a.preserves_directed_colimits && b.preserves_directed_colimits,
                }
            }
            // The form of a join need not be determined by the forms of its parts.
            Functor::BilToBinFunc(_) => FunctorProps { preserves_joins: false, ..all },
            // A connected join may need vertices outside both parts.
            Functor::ConnInclusion => FunctorProps { preserves_joins: false, ..all },
            _ => all,
        }
    }

    /// Whether objects and their images have the same carrier and morphism tables
    /// are unchanged by the functor.
    pub fn carrier_preserving(&self) -> bool {
        match self {
            Functor::Pair(..) | Functor::CoproductFold(..) => false,
            Functor::Compose(f, g) => f.carrier_preserving() && g.carrier_preserving(),
            _ => true,
        }
    }

    /// The class `F⁻¹(cls)` restricted to the declared dom class: the dom class used
    /// when lifting a relation on `cod_cls`.
    pub fn preimage_class(&self, cod_cls: MorphismClass) -> MorphismClass {
        match self {
            Functor::Identity(_) | Functor::CoproductFold(..) | Functor::ConnInclusion => cod_cls,
            _ => match cod_cls {
                MorphismClass::Emb | MorphismClass::Mono => MorphismClass::Mono,
                c => c,
            },
        }
    }

    pub fn obj(&self, o: &Obj) -> Result<Obj> {
        let bad = || Error::Kind(format!("{} cannot be applied to a {} object", self.name(), o.kind_tag()));
        Ok(match (self, o) {
            (Functor::Identity(_), _) | (Functor::ConnInclusion, Obj::Graph { .. }) => o.clone(),
            (Functor::GraphToSet, Obj::Graph { n, .. }) => Obj::set(*n),
            (Functor::SigmaSetToSet, Obj::SigmaSet { endo }) => Obj::set(endo.len() as u32),
            (Functor::SigmaGraphToGraph, Obj::SigmaGraph { edges, endo }) => Obj::graph(endo.len() as u32, edges),
            (Functor::BilToVec(_), Obj::Bil { q, dim, .. }) => Obj::vec(*q, *dim),
            (Functor::BilToBinFunc(_), Obj::Bil { q, .. }) => {
                let n = o.card() as u32;
                Obj::binfunc(*q, n, (0..n * n).map(|ij| o.form(ij / n, ij % n)).collect())
            }
            (Functor::CoproductFold(..), Obj::Tagged(_, inner)) => (**inner).clone(),
            (Functor::Pair(f, g), _) => Obj::product(f.obj(o)?, g.obj(o)?),
            (Functor::Compose(f, g), _) => g.obj(&f.obj(o)?)?,
            _ => return Err(bad()),
        })
    }

    /// Image of a morphism; objects are mapped through `cache` so equal inputs share
    /// one allocation.
    pub fn mor(&self, m: &Morphism) -> Result<Morphism> {
        self.mor_cached(m, &mut Vec::new())
    }

    /// `cache` pairs objects with their images; it stays a handful of entries long.
    fn mor_cached(&self, m: &Morphism, cache: &mut Vec<(Arc<Obj>, Arc<Obj>)>) -> Result<Morphism> {
        let mut img = |o: &Arc<Obj>| -> Result<Arc<Obj>> {
            if let Some((_, x)) = cache.iter().find(|(k, _)| Arc::ptr_eq(k, o) || k == o) {
                return Ok(x.clone());
            }
            let x = Arc::new(self.obj(o)?);
            cache.push((o.clone(), x.clone()));
            Ok(x)
        };
        let (d, c) = (img(m.dom())?, img(m.cod())?);
        match self {
            Functor::Pair(f, g) => Ok(Morphism::pair(&f.mor(m)?, &g.mor(m)?)),
            Functor::CoproductFold(..) => {
                let inner = m.untag().ok_or_else(|| Error::Kind("expected a tagged morphism".into()))?;
                Ok(Morphism::raw(d, c, inner.map().to_vec()))
            }
            Functor::Compose(f, g) => g.mor(&f.mor(m)?),
            _ => Ok(Morphism::raw(d, c, m.map().to_vec())),
        }
    }

    pub fn square(&self, sq: &Square) -> Result<Square> {
        let mut cache = Vec::new();
        Ok(Square {
            ca: self.mor_cached(&sq.ca, &mut cache)?,
            cb: self.mor_cached(&sq.cb, &mut cache)?,
            am: self.mor_cached(&sq.am, &mut cache)?,
            bm: self.mor_cached(&sq.bm, &mut cache)?,
        })
    }

    pub fn diagram(&self, d: &Diagram) -> Result<Diagram> {
        let mut cache = Vec::new();
        let nodes = d
            .nodes
            .iter()
            .map(|o| {
                let x = Arc::new(self.obj(o)?);
                cache.push((o.clone(), x.clone()));
                Ok(x)
            })
            .collect::<Result<Vec<_>>>()?;
        let arrows = d
            .arrows
            .iter()
            .map(|a| Ok(Arrow { src: a.src, dst: a.dst, map: self.mor_cached(&a.map, &mut cache)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Diagram { labels: d.labels.clone(), nodes, arrows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forgetful_functors_keep_tables() {
        let a = Arc::new(Obj::graph(2, &[(0, 1)]));
        let b = Arc::new(Obj::graph(3, &[(0, 1), (1, 2)]));
        let m = Morphism::new(a, b, vec![1, 2]).unwrap();
        let fm = Functor::GraphToSet.mor(&m).unwrap();
        assert_eq!(fm.map(), m.map());
        assert_eq!(**fm.cod(), Obj::set(3));
    }

    #[test]
    fn pairing_bilinear_spaces() {
        let f = Functor::product(vec![Functor::BilToVec(2), Functor::BilToBinFunc(2)]).unwrap();
        let o = Obj::bil(2, 1, vec![1]);
        assert_eq!(f.obj(&o).unwrap(), Obj::product(Obj::vec(2, 1), Obj::binfunc(2, 2, vec![0, 0, 0, 1])));
        assert_eq!(f.cod(), Category::Product(Box::new(Category::FinVec(2)), Box::new(Category::FinBinFunc(2))));
        let single = Functor::product(vec![Functor::BilToVec(2)]).unwrap();
        assert_eq!(single, Functor::BilToVec(2));
    }

    #[test]
    fn composition_checks_endpoints() {
        assert!(Functor::compose(Functor::SigmaGraphToGraph, Functor::GraphToSet).is_ok());
        assert!(Functor::compose(Functor::GraphToSet, Functor::SigmaGraphToGraph).is_err());
    }
}
