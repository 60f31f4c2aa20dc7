//! Pulling independence relations back along functors, and the bounded checks
//! of the properties a lift depends on.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::cat::{
    generated, join_bruteforce, subobjects_of, Arrow, Category, Diagram, Enumerator, FactorizationSystem, Morphism,
    MorphismClass, Obj, Shape, Subobject,
};
use crate::indrel::{amalgamate_squares, Certificate, RelKind, Relation, Scope, Status, Tally, Verdict};
use crate::lifting::Functor;
use crate::{Error, Result};

/// A functor together with the morphism classes it is used between.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConcreteFunctor {
    pub functor: Functor,
    pub dom_cls: MorphismClass,
    pub cod_cls: MorphismClass,
}

/// The class on a product whose components lie in `a` and `b`.
pub fn product_class(a: MorphismClass, b: MorphismClass) -> Result<MorphismClass> {
    use MorphismClass::*;
    match (a, b) {
        _ if a == b => Ok(a),
        (Mono, Emb) | (Emb, Mono) => Ok(Emb),
        _ => Err(Error::Contract(format!("no product class for {} and {}", a.name(), b.name()))),
    }
}

impl ConcreteFunctor {
    /// `dom_cls` must map into `cod_cls`; this is checked on scope by the callers
    /// that enumerate, not here.
    pub fn new(functor: Functor, dom_cls: MorphismClass, cod_cls: MorphismClass) -> ConcreteFunctor {
        ConcreteFunctor { functor, dom_cls, cod_cls }
    }

    /// The functor with the dom class it induces from `cod_cls`.
    pub fn standard(functor: Functor, cod_cls: MorphismClass) -> ConcreteFunctor {
        let dom_cls = functor.preimage_class(cod_cls);
        ConcreteFunctor { functor, dom_cls, cod_cls }
    }

    pub fn name(&self) -> String {
        self.functor.name()
    }

    pub fn dom(&self) -> Category {
        self.functor.dom()
    }

    pub fn cod(&self) -> Category {
        self.functor.cod()
    }

    /// `⟨F_1, ..., F_n⟩`; all factors share a domain and a dom class.
    pub fn product(fs: Vec<ConcreteFunctor>) -> Result<ConcreteFunctor> {
        let first = fs.first().ok_or_else(|| Error::Contract("empty functor list".into()))?;
        let dom_cls = first.dom_cls;
        if let Some(f) = fs.iter().find(|f| f.dom_cls != dom_cls) {
            return Err(Error::Contract(format!("{} uses a different domain class", f.name())));
        }
        let mut cod_cls = fs.last().expect("nonempty").cod_cls;
        for f in fs.iter().rev().skip(1) {
            cod_cls = product_class(f.cod_cls, cod_cls)?;
        }
        let functor = Functor::product(fs.into_iter().map(|f| f.functor).collect())?;
        Ok(ConcreteFunctor { functor, dom_cls, cod_cls })
    }

    /// `second ∘ first`.
    pub fn compose(first: &ConcreteFunctor, second: &ConcreteFunctor) -> Result<ConcreteFunctor> {
        if first.cod_cls != second.dom_cls {
            return Err(Error::Contract(format!("{} does not land in the classes of {}", first.name(), second.name())));
        }
        Ok(ConcreteFunctor {
            functor: Functor::compose(first.functor.clone(), second.functor.clone())?,
            dom_cls: first.dom_cls,
            cod_cls: second.cod_cls,
        })
    }
}

/// `⟨F_1, ..., F_n⟩`.
pub fn functor_product(fs: Vec<ConcreteFunctor>) -> Result<ConcreteFunctor> {
    ConcreteFunctor::product(fs)
}

/// Componentwise relation on the product of the two categories.
pub fn product_relation(l: Relation, r: Relation) -> Result<Relation> {
    let cls = product_class(l.cls, r.cls)?;
    let category = Category::Product(Box::new(l.category.clone()), Box::new(r.category.clone()));
    Ok(Relation::new(format!("{}*{}", l.name, r.name), category, cls, RelKind::Product(Box::new(l), Box::new(r))))
}

/// `F⁻¹(rel)`: a square is independent iff its image is.
pub fn lift_relation(f: &ConcreteFunctor, rel: &Relation) -> Result<Relation> {
    if rel.category != f.cod() {
        return Err(Error::Contract(format!("{} lives on {}, not on {}", rel.name, rel.category.name(), f.cod().name())));
    }
    if rel.cls != f.cod_cls {
        return Err(Error::Contract(format!(
            "{} classifies {} squares but {} lands in {}",
            rel.name,
            rel.cls.name(),
            f.name(),
            f.cod_cls.name()
        )));
    }
    Ok(Relation::new(
        format!("lift[{}]({})", f.name(), rel.name),
        f.dom(),
        f.dom_cls,
        RelKind::Lift(Box::new(f.functor.clone()), Box::new(rel.clone())),
    ))
}

pub(crate) const SQUARE: [&str; 4] = ["C", "A", "B", "M"];
pub(crate) const SQUARE_EDGES: [(&str, &str); 4] = [("C", "A"), ("C", "B"), ("A", "M"), ("B", "M")];

/// Runs `visit` over the commuting diagrams of `shape` in `cat`, threading errors out.
pub(crate) fn sweep(
    cat: &Category,
    shape: Shape,
    cls: MorphismClass,
    scope: &Scope,
    tally: &mut Tally,
    mut visit: impl FnMut(&Diagram, &mut Tally) -> Result<()>,
) -> Result<()> {
    let mut err = None;
    let stats = Enumerator::new(cat, shape, cls, scope.max_size).hom_cap(scope.max_hom).run(|d| match visit(d, tally) {
        Ok(()) => ControlFlow::Continue(()),
        Err(e) => {
            err = Some(e);
            ControlFlow::Break(())
        }
    })?;
    tally.timing.diagrams += stats.diagrams;
    err.map_or(Ok(()), Err)
}

/// Lifting along `G ∘ F` agrees with lifting along `G` and then along `F`.
pub fn compose_lift_law_check(f: &ConcreteFunctor, g: &ConcreteFunctor, rel: &Relation, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    let gf = ConcreteFunctor::compose(f, g)?;
    let direct = lift_relation(&gf, rel)?;
    let stepwise = lift_relation(f, &lift_relation(g, rel)?)?;
    let mut tally = Tally::new();
    sweep(&f.dom(), Shape::new(&SQUARE, &SQUARE_EDGES), f.dom_cls, scope, &mut tally, |d, t| {
        let sq = d.square("C", "A", "B", "M")?;
        let (x, y) = (direct.decide(&sq)?, stepwise.decide(&sq)?);
        if x == y {
            t.holds(d);
        } else {
            let condition = format!("{} says {x}, {} says {y}", direct.name, stepwise.name);
            t.violated(d, Certificate::Violation { condition });
        }
        Ok(())
    })?;
    Ok(tally.verdict(&direct.name, "lift-composition", scope, None))
}

/// Bounded check that `F` reflects amalgamation: whenever the images of two dom
/// squares over a common span amalgamate in the cod, the squares amalgamate.
pub fn check_reflects_amalgamation(f: &ConcreteFunctor, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    let (dom, cod) = (f.dom(), f.cod());
    let shape = Shape::new(
        &["C", "A", "B", "M", "M'"],
        &[("C", "A"), ("C", "B"), ("A", "M"), ("B", "M"), ("A", "M'"), ("B", "M'")],
    );
    let mut tally = Tally::new();
    sweep(&dom, shape, f.dom_cls, scope, &mut tally, |d, t| {
        let sq1 = d.square("C", "A", "B", "M")?;
        let sq2 = d.square("C", "A", "B", "M'")?;
        let image = amalgamate_squares(&cod, f.cod_cls, &f.functor.square(&sq1)?, &f.functor.square(&sq2)?, scope)?;
        if !image.holds() {
            return Ok(());
        }
        let here = amalgamate_squares(&dom, f.dom_cls, &sq1, &sq2, scope)?;
        match here.status {
            Status::HoldsWithinScope => t.holds(here.witness.as_ref().unwrap_or(d)),
            Status::Fails => t.violated(d, here.certificate.expect("failures carry certificates")),
            Status::Inconclusive => t.undecided(d),
        }
        Ok(())
    })?;
    Ok(tally.verdict(&format!("{}/{}", f.name(), f.dom_cls.name()), "reflects-amalgamation", scope, None))
}

fn join_in(cat: &Category, fs: FactorizationSystem, a: &Subobject, b: &Subobject) -> Result<Subobject> {
    let (incl, _) = generated(fs, &[a.mono.clone(), b.mono.clone()])?;
    if cat.contains(incl.dom()) {
        return Ok(Subobject { mono: incl });
    }
    if cat.capabilities().join_decider {
        return join_bruteforce(cat, fs, a, b);
    }
    Err(Error::Capability(format!("{} cannot decide joins", cat.name())))
}

/// Bounded check that `F(a ∨ b) = F(a) ∨ F(b)` for subobjects of each object.
pub fn preserves_joins_check(f: &ConcreteFunctor, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    let dom = f.dom();
    let (dfs, cfs) = (FactorizationSystem::for_class(f.dom_cls), FactorizationSystem::for_class(f.cod_cls));
    let mut tally = Tally::new();
    for obj in dom.objects(scope.max_size)? {
        let d = Arc::new(obj);
        let subs = subobjects_of(&dom, dfs, &d)?;
        tally.timing.diagrams += subs.len() * (subs.len() + 1) / 2;
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i..] {
                if a.le(b) || b.le(a) {
                    continue;
                }
                let witness = Diagram {
                    labels: vec!["A".into(), "B".into(), "D".into()],
                    nodes: vec![a.obj().clone(), b.obj().clone(), d.clone()],
                    arrows: vec![
                        Arrow { src: 0, dst: 2, map: a.mono.clone() },
                        Arrow { src: 1, dst: 2, map: b.mono.clone() },
                    ],
                };
                if witness.total_size() > tally.size_bound() {
                    continue;
                }
                let join = join_in(&dom, dfs, a, b)?;
                let image = Subobject::new(cfs, &f.functor.mor(&join.mono)?)?;
                let parts = [f.functor.mor(&a.mono)?, f.functor.mor(&b.mono)?];
                let expected = Subobject { mono: generated(cfs, &parts)?.0 };
                if image.same(&expected) {
                    tally.holds(&witness);
                } else {
                    let condition = format!(
                        "image of the join has {} elements, join of the images has {}",
                        image.obj().card(),
                        expected.obj().card()
                    );
                    tally.violated(&witness, Certificate::Violation { condition });
                }
            }
        }
    }
    Ok(tally.verdict(&format!("{}/{}", f.name(), f.dom_cls.name()), "preserves-joins", scope, None))
}

/// Bounded check of functoriality on composable pairs and of faithfulness on
/// parallel pairs.
pub fn check_functor_laws(f: &ConcreteFunctor, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    let shape = Shape::new(&["X", "Y", "Z"], &[("X", "Y"), ("Y", "Z")]);
    let faithful = f.functor.props().faithful;
    let mut tally = Tally::new();
    sweep(&f.dom(), shape, f.dom_cls, scope, &mut tally, |d, t| {
        let (g, h) = (d.arrow("X", "Y")?, d.arrow("Y", "Z")?);
        let lhs = f.functor.mor(&Morphism::compose(h, g)?)?;
        let rhs = Morphism::compose(&f.functor.mor(h)?, &f.functor.mor(g)?)?;
        let id = f.functor.mor(&Morphism::identity(g.dom()))?;
        if lhs != rhs {
            t.violated(d, Certificate::Violation { condition: "F(h.g) differs from F(h).F(g)".into() });
        } else if id != Morphism::identity(id.dom()) {
            t.violated(d, Certificate::Violation { condition: "F(id) is not an identity".into() });
        } else if !f.cod_cls.contains(&rhs) {
            t.violated(d, Certificate::Violation { condition: format!("image leaves the {} class", f.cod_cls.name()) });
        } else {
            t.holds(d);
        }
        Ok(())
    })?;
    if faithful {
        let shape = Shape::new(&["X", "Y"], &[("X", "Y")]);
        let dom = f.dom();
        sweep(&dom, shape, f.dom_cls, scope, &mut tally, |d, t| {
            let g = d.arrow("X", "Y")?;
            let fg = f.functor.mor(g)?;
            for other in dom.hom(g.dom(), g.cod(), f.dom_cls, scope.max_hom)? {
                if other != *g && f.functor.mor(&other)? == fg {
                    let condition = format!("{:?} and {:?} have the same image", g.map(), other.map());
                    t.violated(d, Certificate::Violation { condition });
                    return Ok(());
                }
            }
            t.holds(d);
            Ok(())
        })?;
    }
    Ok(tally.verdict(&format!("{}/{}", f.name(), f.dom_cls.name()), "functor-laws", scope, None))
}

/// Object images, for the functors whose object map is total on `dom`.
pub fn image_of(f: &ConcreteFunctor, o: &Obj) -> Result<Obj> {
    f.dom().check_object(o)?;
    f.functor.obj(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indrel::{check_axiom, pullback_relation, Axiom};

    fn graph_to_set() -> ConcreteFunctor {
        ConcreteFunctor::new(Functor::GraphToSet, MorphismClass::Emb, MorphismClass::Mono)
    }

    #[test]
    fn lift_contract() {
        let set = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let lifted = lift_relation(&graph_to_set(), &set).unwrap();
        assert_eq!(lifted.category, Category::FinGraph);
        assert_eq!(lifted.cls, MorphismClass::Emb);
        let graph = pullback_relation(&Category::FinGraph, MorphismClass::Emb).unwrap();
        assert!(matches!(lift_relation(&graph_to_set(), &graph), Err(Error::Contract(_))));
    }

    #[test]
    fn lifted_set_independence_is_symmetric_on_graphs() {
        let set = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let lifted = lift_relation(&graph_to_set(), &set).unwrap();
        assert!(check_axiom(&lifted, Axiom::Symmetry, &Scope::new(2, 3)).unwrap().holds());
    }

    #[test]
    fn forgetting_edges_does_not_reflect_amalgamation() {
        let v = check_reflects_amalgamation(&graph_to_set(), &Scope::new(2, 4)).unwrap();
        assert!(v.fails(), "{}", v.to_json());
        assert!(v.to_json().contains("edge-disagreement"));
    }

    #[test]
    fn graph_to_set_preserves_joins_but_bil_to_binfunc_does_not() {
        let scope = Scope::new(3, 3);
        assert!(preserves_joins_check(&graph_to_set(), &scope).unwrap().holds());
        let bf = ConcreteFunctor::new(Functor::BilToBinFunc(2), MorphismClass::Mono, MorphismClass::Mono);
        assert!(preserves_joins_check(&bf, &Scope::new(2, 2)).unwrap().fails());
    }

    #[test]
    fn composite_lift_agrees_with_stepwise_lift() {
        let f = ConcreteFunctor::new(Functor::SigmaGraphToGraph, MorphismClass::Emb, MorphismClass::Emb);
        let g = graph_to_set();
        let set = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        assert!(compose_lift_law_check(&f, &g, &set, &Scope::new(2, 2)).unwrap().holds());
    }

    #[test]
    fn forgetful_functors_are_faithful_functors() {
        assert!(check_functor_laws(&graph_to_set(), &Scope::new(3, 3)).unwrap().holds());
    }

    #[test]
    fn products_combine_classes() {
        let p = ConcreteFunctor::product(vec![
            ConcreteFunctor::new(Functor::BilToVec(2), MorphismClass::Mono, MorphismClass::Mono),
            ConcreteFunctor::new(Functor::BilToBinFunc(2), MorphismClass::Mono, MorphismClass::Mono),
        ])
        .unwrap();
        assert_eq!(p.cod_cls, MorphismClass::Mono);
        assert_eq!(product_class(MorphismClass::Mono, MorphismClass::Emb).unwrap(), MorphismClass::Emb);
        assert!(product_class(MorphismClass::Mono, MorphismClass::Surj).is_err());
    }
}
