//! Multi-reflections of a functor at an object, and the factorization of cocones
//! through them.

use std::sync::Arc;

use serde::Serialize;

use super::lift::ConcreteFunctor;
use crate::cat::{Diagram, Morphism, Obj};
use crate::indrel::Scope;
use crate::{Error, Result};

/// A family `e_i: F(C_i) -> D`, found among dom objects up to `scope.max_size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiReflection {
    pub target: Arc<Obj>,
    /// `(C_i, e_i)`.
    pub family: Vec<(Arc<Obj>, Morphism)>,
    /// Arrows `F(C) -> D` enumerated for the verification.
    pub checked: usize,
    /// Every enumerated arrow factors through exactly one member in exactly one way.
    pub verified: bool,
    /// The first arrow whose factorization count is not one, with that count.
    pub counterexample: Option<(Arc<Obj>, Morphism, usize)>,
}

impl MultiReflection {
    /// `(i, f)` with `e_i ∘ F(f) = e`, in family order.
    pub fn factorizations(&self, f: &ConcreteFunctor, c: &Arc<Obj>, e: &Morphism, scope: &Scope) -> Result<Vec<(usize, Morphism)>> {
        let dom = f.dom();
        let mut out = Vec::new();
        for (i, (ci, ei)) in self.family.iter().enumerate() {
            if !ci.same_kind(c) {
                continue;
            }
            for g in dom.hom(c, ci, f.dom_cls, scope.max_hom)? {
                if Morphism::compose(ei, &f.functor.mor(&g)?)?.map() == e.map() {
                    out.push((i, g));
                }
            }
        }
        Ok(out)
    }
}

/// `e'` factors through `e` as `e ∘ F(g)` for some dom arrow `g`.
fn factors_through(f: &ConcreteFunctor, (c1, e1): &(Arc<Obj>, Morphism), (c2, e2): &(Arc<Obj>, Morphism), scope: &Scope) -> Result<bool> {
    for g in f.dom().hom(c1, c2, f.dom_cls, scope.max_hom)? {
        if Morphism::compose(e2, &f.functor.mor(&g)?)?.map() == e1.map() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Enumerates every `e: F(C) -> D` in the cod class with `C` up to the scope,
/// keeps the maximal ones under factorization (one per equivalence class), and
/// verifies the unique factorization property against all of them.
pub fn multi_reflection_at(f: &ConcreteFunctor, d: &Obj, scope: &Scope) -> Result<MultiReflection> {
    scope.validate()?;
    let (dom, cod) = (f.dom(), f.cod());
    cod.check_object(d)?;
    let target = Arc::new(d.clone());
    let mut arrows: Vec<(Arc<Obj>, Morphism)> = Vec::new();
    for c in dom.objects(scope.max_size)? {
        let c = Arc::new(c);
        let fc = Arc::new(f.functor.obj(&c)?);
        for e in cod.hom(&fc, &target, f.cod_cls, scope.max_hom)? {
            arrows.push((c.clone(), e));
        }
    }
    let mut family: Vec<(Arc<Obj>, Morphism)> = Vec::new();
    for (k, x) in arrows.iter().enumerate() {
        let mut maximal = true;
        for (j, y) in arrows.iter().enumerate() {
            if j != k && factors_through(f, x, y, scope)? && !factors_through(f, y, x, scope)? {
                maximal = false;
                break;
            }
        }
        if !maximal {
            continue;
        }
        let mut fresh = true;
        for m in &family {
            if factors_through(f, x, m, scope)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            family.push(x.clone());
        }
    }
    let mut mr = MultiReflection { target, family, checked: arrows.len(), verified: true, counterexample: None };
    for (c, e) in &arrows {
        let n = mr.factorizations(f, c, e, scope)?.len();
        if n != 1 {
            mr.verified = false;
            mr.counterexample = Some((c.clone(), e.clone(), n));
            break;
        }
    }
    Ok(mr)
}

/// A dom cocone `f_i: X_i -> C` with `u: F(C) -> D` and `d_i = u ∘ F(f_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoconeFactorization {
    pub apex: Arc<Obj>,
    pub legs: Vec<Morphism>,
    pub u: Morphism,
    /// Index of the family member used.
    pub member: usize,
}

fn connected(d: &Diagram) -> bool {
    let n = d.nodes.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(c: &mut [usize], mut i: usize) -> usize {
        while c[i] != i {
            c[i] = c[c[i]];
            i = c[i];
        }
        i
    }
    for a in &d.arrows {
        let (x, y) = (root(&mut comp, a.src), root(&mut comp, a.dst));
        comp[x] = y;
    }
    (0..n).all(|i| root(&mut comp, i) == root(&mut comp, 0))
}

/// Factors the cocone `cocone[i]: F(X_i) -> D` over the connected dom diagram `d`
/// through the multi-reflection at `D`.
pub fn cocone_factorization(
    f: &ConcreteFunctor,
    mr: &MultiReflection,
    d: &Diagram,
    cocone: &[Morphism],
    scope: &Scope,
) -> Result<CoconeFactorization> {
    if d.nodes.is_empty() || !connected(d) {
        return Err(Error::Contract("the diagram must be nonempty and connected".into()));
    }
    if cocone.len() != d.nodes.len() {
        return Err(Error::MalformedDiagram("one cocone leg per node is required".into()));
    }
    if !mr.verified {
        return Err(Error::Capability(format!("{} is not verified multiadjoint at this object", f.name())));
    }
    for a in &d.arrows {
        let via = Morphism::compose(&cocone[a.dst], &f.functor.mor(&a.map)?)?;
        if via.map() != cocone[a.src].map() {
            return Err(Error::MalformedDiagram("the legs do not form a cocone".into()));
        }
    }
    let mut member = None;
    let mut legs = Vec::with_capacity(cocone.len());
    for (i, di) in cocone.iter().enumerate() {
        let fs = mr.factorizations(f, &d.nodes[i], di, scope)?;
        let [(j, g)] = fs.as_slice() else {
            return Err(Error::Construction(format!("leg {} has {} factorizations", d.labels[i], fs.len())));
        };
        if member.is_some_and(|m| m != *j) {
            return Err(Error::Construction("legs factor through different members".into()));
        }
        member = Some(*j);
        legs.push(g.clone());
    }
    let member = member.expect("nonempty");
    let (apex, u) = mr.family[member].clone();
    for a in &d.arrows {
        if Morphism::compose(&legs[a.dst], &a.map)? != legs[a.src] {
            return Err(Error::Construction("factored legs do not form a cocone".into()));
        }
    }
    Ok(CoconeFactorization { apex, legs, u, member })
}

/// The comparison of the lemma's uniqueness clause: given a competitor cocone
/// `f'_i: X_i -> C'` with `u': F(C') -> D` and `d_i = u' ∘ F(f'_i)`, the arrows
/// `g: C' -> C` with `f_i = g ∘ f'_i` for all `i`. Exactly one is expected.
pub fn compare_cocones(
    f: &ConcreteFunctor,
    cf: &CoconeFactorization,
    competitor: &(Arc<Obj>, Vec<Morphism>, Morphism),
    scope: &Scope,
) -> Result<Vec<Morphism>> {
    let (c2, legs2, u2) = competitor;
    if legs2.len() != cf.legs.len() {
        return Err(Error::MalformedDiagram("cocones over different diagrams".into()));
    }
    for (l, l2) in cf.legs.iter().zip(legs2) {
        let d = Morphism::compose(&cf.u, &f.functor.mor(l)?)?;
        if Morphism::compose(u2, &f.functor.mor(l2)?)?.map() != d.map() {
            return Err(Error::Contract("the competitor induces a different cocone in the codomain".into()));
        }
    }
    let mut out = Vec::new();
    for g in f.dom().hom(c2, &cf.apex, f.dom_cls, scope.max_hom)? {
        let mut ok = true;
        for (l, l2) in cf.legs.iter().zip(legs2) {
            ok &= Morphism::compose(&g, l2)? == *l;
        }
        if ok {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{Category, MorphismClass};
    use crate::lifting::Functor;

    fn conn() -> ConcreteFunctor {
        ConcreteFunctor::new(Functor::ConnInclusion, MorphismClass::Emb, MorphismClass::Emb)
    }

    #[test]
    fn identity_reflects_through_the_identity() {
        let f = ConcreteFunctor::new(Functor::Identity(Category::FinSet), MorphismClass::Mono, MorphismClass::Mono);
        let mr = multi_reflection_at(&f, &Obj::set(2), &Scope::new(2, 2)).unwrap();
        assert!(mr.verified);
        assert_eq!(mr.family.len(), 1);
        assert!(mr.family[0].1.is_iso());
    }

    #[test]
    fn components_of_a_graph() {
        let d = Obj::graph(4, &[(0, 1), (2, 3)]);
        let mr = multi_reflection_at(&conn(), &d, &Scope::new(4, 4)).unwrap();
        assert!(mr.verified);
        let mut images: Vec<Vec<u32>> = mr.family.iter().map(|(_, e)| e.image()).collect();
        images.sort();
        assert_eq!(images, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn coproduct_fold_reflects_per_summand() {
        let f = ConcreteFunctor::new(Functor::CoproductFold(Category::FinSet, 2), MorphismClass::Mono, MorphismClass::Mono);
        let mr = multi_reflection_at(&f, &Obj::set(2), &Scope::new(2, 2)).unwrap();
        assert!(mr.verified);
        let tags: Vec<&str> = mr.family.iter().map(|(c, _)| c.kind_tag()).collect();
        assert_eq!(tags.len(), 2);
    }

    #[test]
    fn graph_to_set_is_not_multiadjoint_on_embeddings() {
        let f = ConcreteFunctor::new(Functor::GraphToSet, MorphismClass::Emb, MorphismClass::Mono);
        let mr = multi_reflection_at(&f, &Obj::set(2), &Scope::new(2, 2)).unwrap();
        assert!(!mr.verified);
    }

    #[test]
    fn spans_factor_through_one_component() {
        let dgraph = Obj::graph(5, &[(0, 1), (1, 2), (3, 4)]);
        let mr = multi_reflection_at(&conn(), &dgraph, &Scope::new(5, 5)).unwrap();
        let span = Diagram::build(
            vec![("C", Obj::graph(1, &[])), ("A", Obj::graph(2, &[(0, 1)])), ("B", Obj::graph(2, &[(0, 1)]))],
            vec![("C", "A", vec![0]), ("C", "B", vec![0])],
        )
        .unwrap();
        let target = mr.target.clone();
        let leg = |i: usize, t: Vec<u32>| Morphism::new(span.nodes[i].clone(), target.clone(), t).unwrap();
        let cocone = [leg(0, vec![1]), leg(1, vec![1, 0]), leg(2, vec![1, 2])];
        let cf = cocone_factorization(&conn(), &mr, &span, &cocone, &Scope::new(5, 5)).unwrap();
        assert_eq!(cf.u.image(), vec![0, 1, 2]);
        assert!(Category::FinGraph.isomorphic(&cf.apex, &Arc::new(Obj::graph(3, &[(0, 1), (1, 2)]))));
        let legs2: Vec<Morphism> = cf.legs.iter().map(|l| l.with_endpoints(l.dom().clone(), cf.apex.clone()).unwrap()).collect();
        let g = compare_cocones(&conn(), &cf, &(cf.apex.clone(), legs2, cf.u.clone()), &Scope::new(5, 5)).unwrap();
        assert_eq!(g.len(), 1);
        let disconnected = Diagram::build(vec![("A", Obj::graph(1, &[])), ("B", Obj::graph(1, &[]))], vec![]).unwrap();
        let two = [leg(0, vec![0]), leg(0, vec![3])];
        assert!(matches!(
            cocone_factorization(&conn(), &mr, &disconnected, &two, &Scope::new(5, 5)),
            Err(Error::Contract(_))
        ));
    }
}
