//! Property tests for the structural invariants of categories, relations and verdicts.

use std::ops::ControlFlow;
use std::sync::Arc;

use indlift::cat::{
    factorize, join_bruteforce, subobjects_of, Category, Diagram, Enumerator, FactorizationSystem, Morphism, MorphismClass,
    Obj, Shape,
};
use indlift::indrel::{check_axiom, is_independent, pullback_relation, replay, Axiom, Scope, Status, Verdict};
use indlift::lifting::Functor;
use proptest::prelude::*;

fn categories() -> [(Category, &'static [MorphismClass]); 3] {
    use MorphismClass::*;
    [(Category::FinSet, &[All, Mono]), (Category::FinGraph, &[All, Mono, Emb]), (Category::FinVec(2), &[All, Mono])]
}

fn pick<T: Clone>(xs: &[T], i: usize) -> Option<T> {
    (!xs.is_empty()).then(|| xs[i % xs.len()].clone())
}

fn object(cat: &Category, i: usize) -> Arc<Obj> {
    Arc::new(pick(&cat.objects(3).unwrap(), i).unwrap())
}

fn arrow(cat: &Category, a: &Arc<Obj>, b: &Arc<Obj>, cls: MorphismClass, i: usize) -> Option<Morphism> {
    pick(&cat.hom(a, b, cls, 100_000).unwrap(), i)
}

fn squares(cat: &Category, cls: MorphismClass, size: usize) -> Vec<Diagram> {
    let shape = Shape::new(&["C", "A", "B", "M"], &[("C", "A"), ("C", "B"), ("A", "M"), ("B", "M")]);
    let mut out = Vec::new();
    Enumerator::new(cat, shape, cls, size)
        .run(|d| {
            out.push(d.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_and_unital(c in 0usize..3, o in prop::array::uniform4(0usize..64), m in prop::array::uniform3(0usize..4096)) {
        let (cat, _) = categories()[c].clone();
        let [w, x, y, z] = o.map(|i| object(&cat, i));
        let (f, g, h) = (arrow(&cat, &w, &x, MorphismClass::All, m[0]), arrow(&cat, &x, &y, MorphismClass::All, m[1]), arrow(&cat, &y, &z, MorphismClass::All, m[2]));
        prop_assume!(f.is_some() && g.is_some() && h.is_some());
        let (f, g, h) = (f.unwrap(), g.unwrap(), h.unwrap());
        let left = Morphism::compose(&h, &Morphism::compose(&g, &f).unwrap()).unwrap();
        let right = Morphism::compose(&Morphism::compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&Morphism::compose(&f, &Morphism::identity(&w)).unwrap(), &f);
        prop_assert_eq!(&Morphism::compose(&Morphism::identity(&x), &f).unwrap(), &f);
    }

    #[test]
    fn factorization_recomposes_exactly(c in 0usize..3, k in 0usize..3, o in prop::array::uniform2(0usize..64), m in 0usize..4096) {
        let (cat, classes) = categories()[c].clone();
        let cls = classes[k % classes.len()];
        let (a, b) = (object(&cat, o[0]), object(&cat, o[1]));
        let f = arrow(&cat, &a, &b, cls, m);
        prop_assume!(f.is_some());
        let f = f.unwrap();
        let fs = FactorizationSystem::for_class(cls);
        let (e, mono) = factorize(fs, &f).unwrap();
        prop_assert!(fs.e.contains(&e) && fs.m.contains(&mono) && mono.is_injective());
        let back = Morphism::compose(&mono, &e).unwrap();
        prop_assert_eq!(back.map(), f.map());
    }

    #[test]
    fn class_restricted_homs_filter_all_homs(c in 0usize..3, k in 0usize..3, o in prop::array::uniform2(0usize..64)) {
        let (cat, classes) = categories()[c].clone();
        let cls = classes[k % classes.len()];
        let (a, b) = (object(&cat, o[0]), object(&cat, o[1]));
        let all = cat.hom(&a, &b, MorphismClass::All, 100_000).unwrap();
        let restricted = cat.hom(&a, &b, cls, 100_000).unwrap();
        let filtered: Vec<Morphism> = all.into_iter().filter(|m| cls.contains(m)).collect();
        prop_assert_eq!(restricted, filtered);
    }

    #[test]
    fn joins_are_commutative_idempotent_and_upper_bounds(c in 0usize..3, o in 0usize..64, i in 0usize..256, j in 0usize..256) {
        let (cat, classes) = categories()[c].clone();
        let fs = FactorizationSystem::for_class(*classes.last().unwrap());
        let d = object(&cat, o);
        let subs = subobjects_of(&cat, fs, &d).unwrap();
        let (a, b) = (pick(&subs, i).unwrap(), pick(&subs, j).unwrap());
        let ab = join_bruteforce(&cat, fs, &a, &b).unwrap();
        prop_assert!(ab.same(&join_bruteforce(&cat, fs, &b, &a).unwrap()));
        prop_assert!(join_bruteforce(&cat, fs, &a, &a).unwrap().same(&a));
        prop_assert!(a.le(&ab) && b.le(&ab));
    }

    #[test]
    fn canonical_forms_ignore_labelling(edges in prop::collection::vec((0u32..5, 0u32..5), 0..8), perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let edges: Vec<(u32, u32)> = edges.into_iter().filter(|(u, v)| u != v).collect();
        let g = Obj::graph(5, &edges);
        prop_assert_eq!(g.relabel(&perm).canonical(), g.canonical());
    }

    #[test]
    fn forgetful_functors_are_functorial(which in 0usize..2, o in prop::array::uniform3(0usize..64), m in prop::array::uniform2(0usize..4096)) {
        let (f, cat) = [(Functor::GraphToSet, Category::FinGraph), (Functor::BilToVec(2), Category::FinBil(2))][which].clone();
        let objs = cat.objects(2).unwrap();
        let [x, y, z] = o.map(|i| Arc::new(pick(&objs, i).unwrap()));
        let (g, h) = (arrow(&cat, &x, &y, MorphismClass::All, m[0]), arrow(&cat, &y, &z, MorphismClass::All, m[1]));
        prop_assume!(g.is_some() && h.is_some());
        let (g, h) = (g.unwrap(), h.unwrap());
        let whole = f.mor(&Morphism::compose(&h, &g).unwrap()).unwrap();
        let parts = Morphism::compose(&f.mor(&h).unwrap(), &f.mor(&g).unwrap()).unwrap();
        prop_assert_eq!(whole.map(), parts.map());
        let (image, id) = (f.mor(&Morphism::identity(&x)).unwrap(), Morphism::identity(&Arc::new(f.obj(&x).unwrap())));
        prop_assert_eq!(image.map(), id.map());
    }

    #[test]
    fn pullback_independence_is_symmetric_and_deterministic(c in 0usize..2, i in 0usize..10_000) {
        let (cat, cls) = [(Category::FinSet, MorphismClass::Mono), (Category::FinGraph, MorphismClass::Emb)][c].clone();
        let rel = pullback_relation(&cat, cls).unwrap();
        let d = pick(&squares(&cat, cls, 2), i).unwrap();
        let sq = d.square("C", "A", "B", "M").unwrap();
        let first = is_independent(&rel, &sq).unwrap();
        prop_assert_eq!(first, is_independent(&rel, &sq).unwrap());
        prop_assert_eq!(first, is_independent(&rel, &sq.transpose()).unwrap());
    }
}

fn cheap_axioms() -> impl Strategy<Value = Axiom> {
    prop::sample::select(vec![Axiom::Invariance, Axiom::SemiInvariance, Axiom::Monotonicity, Axiom::Symmetry, Axiom::Transitivity, Axiom::Existence])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdicts_are_monotone_in_scope_and_replay(r in 0usize..3, axiom in cheap_axioms(), n in 1usize..3) {
        let (cat, cls) = [(Category::FinSet, MorphismClass::Mono), (Category::FinSet, MorphismClass::All), (Category::FinGraph, MorphismClass::Emb)][r].clone();
        let rel = pullback_relation(&cat, cls).unwrap();
        let small = check_axiom(&rel, axiom, &Scope::new(n, n + 1)).unwrap();
        let large = check_axiom(&rel, axiom, &Scope::new(n + 1, n + 2)).unwrap();
        let decided = |v: &Verdict| matches!(v.status, Status::HoldsWithinScope | Status::Fails);
        if decided(&small) && decided(&large) {
            prop_assert!(!(small.fails() && large.holds()), "{} {} fails at {n} but holds at {}", rel.name, axiom.tag(), n + 1);
        }
        for v in [&small, &large] {
            if v.fails() {
                prop_assert!(v.witness.is_some() && replay(&rel, v).unwrap());
            }
            prop_assert_eq!(&Verdict::from_json(&v.to_json()).unwrap(), v);
        }
    }
}
