//! Canonical amalgams: the exact constructions behind completion searches.
//!
//! Sets glue by pushout, graphs by the free amalgam (no edges beyond the parts),
//! vector spaces by the amalgamated sum, bilinear spaces by extending the form by
//! zero, and the σ-kinds by the free extension of the endomorphism.

use std::sync::Arc;

use crate::cat::{glue, Category, GlueError, Glued, Gluing, MorphismClass, Obstruction, Span, Square};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Amalgam {
    Found(Glued),
    /// No amalgam exists at any size.
    Impossible(Obstruction),
}

impl Amalgam {
    pub fn found(&self) -> Option<&Glued> {
        match self {
            Amalgam::Found(g) => Some(g),
            Amalgam::Impossible(_) => None,
        }
    }
}

/// Glue `g` into `cat`, certifying impossibility when no cocone exists.
pub fn canonical_amalgam(cat: &Category, g: &Gluing) -> Result<Amalgam> {
    if !cat.capabilities().canonical_amalgam {
        return Err(Error::Capability(format!("{} has no canonical amalgam", cat.name())));
    }
    match glue(cat, g) {
        Ok(out) => Ok(Amalgam::Found(out)),
        Err(GlueError::Obstructed(o)) => Ok(Amalgam::Impossible(o)),
        Err(GlueError::Unresolved(why)) => Err(Error::Capability(format!("{}: {why}", cat.name()))),
    }
}

/// Pushout-style amalgam of a span, with legs in `cls`.
pub fn span_amalgam(cat: &Category, cls: MorphismClass, span: &Span) -> Result<Amalgam> {
    let mut g = Gluing::new();
    let c = g.node("C", span.apex().clone(), cls);
    let a = g.node("A", span.left.cod().clone(), cls);
    let b = g.node("B", span.right.cod().clone(), cls);
    g.arrow(c, a, span.left.map());
    g.arrow(c, b, span.right.map());
    canonical_amalgam(cat, &g)
}

/// Amalgam of two cocones `M`, `M'` over one span: the uniqueness shape.
pub fn squares_amalgam(cat: &Category, cls: MorphismClass, sq1: &Square, sq2: &Square) -> Result<Amalgam> {
    if sq1.ca != sq2.ca || sq1.cb != sq2.cb {
        return Err(Error::MalformedDiagram("squares have different base spans".into()));
    }
    let mut g = Gluing::new();
    let c = g.node("C", sq1.c().clone(), cls);
    let a = g.node("A", sq1.a().clone(), cls);
    let b = g.node("B", sq1.b().clone(), cls);
    let m = g.node("M", sq1.m().clone(), cls);
    let m2 = g.node("M'", Arc::clone(sq2.m()), cls);
    g.arrow(c, a, sq1.ca.map());
    g.arrow(c, b, sq1.cb.map());
    g.arrow(a, m, sq1.am.map());
    g.arrow(b, m, sq1.bm.map());
    g.arrow(a, m2, sq2.am.map());
    g.arrow(b, m2, sq2.bm.map());
    canonical_amalgam(cat, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{Morphism, Obj};

    fn mor(dom: &Arc<Obj>, cod: &Arc<Obj>, map: Vec<u32>) -> Morphism {
        Morphism::new(dom.clone(), cod.clone(), map).unwrap()
    }

    #[test]
    fn sets_amalgamate_by_union() {
        let (c, a, m) = (Arc::new(Obj::set(1)), Arc::new(Obj::set(2)), Arc::new(Obj::set(3)));
        let sq1 = Square::new(mor(&c, &a, vec![0]), mor(&c, &a, vec![0]), mor(&a, &m, vec![0, 1]), mor(&a, &m, vec![0, 2])).unwrap();
        let sq2 = Square::new(mor(&c, &a, vec![0]), mor(&c, &a, vec![0]), mor(&a, &m, vec![0, 2]), mor(&a, &m, vec![0, 1])).unwrap();
        let out = squares_amalgam(&Category::FinSet, MorphismClass::Mono, &sq1, &sq2).unwrap();
        assert_eq!(*out.found().unwrap().apex, Obj::set(3));
    }

    #[test]
    fn graphs_amalgamate_freely() {
        let c = Arc::new(Obj::graph(1, &[]));
        let e = Arc::new(Obj::graph(2, &[(0, 1)]));
        let span = Span::new(mor(&c, &e, vec![0]), mor(&c, &e, vec![0])).unwrap();
        let out = span_amalgam(&Category::FinGraph, MorphismClass::Emb, &span).unwrap();
        let apex = &out.found().unwrap().apex;
        assert_eq!(apex.card(), 3);
        assert_eq!(apex.edges().unwrap().len(), 2);
    }

    #[test]
    fn graph_cocones_must_agree_on_edges() {
        let c = Arc::new(Obj::graph(0, &[]));
        let v = Arc::new(Obj::graph(1, &[]));
        let (edge, gap) = (Arc::new(Obj::graph(2, &[(0, 1)])), Arc::new(Obj::graph(2, &[])));
        let sq1 = Square::new(mor(&c, &v, vec![]), mor(&c, &v, vec![]), mor(&v, &edge, vec![0]), mor(&v, &edge, vec![1])).unwrap();
        let sq2 = Square::new(mor(&c, &v, vec![]), mor(&c, &v, vec![]), mor(&v, &gap, vec![0]), mor(&v, &gap, vec![1])).unwrap();
        let out = squares_amalgam(&Category::FinGraph, MorphismClass::Emb, &sq1, &sq2).unwrap();
        assert!(matches!(out, Amalgam::Impossible(Obstruction::EdgeDisagreement { .. })), "{out:?}");
    }

    #[test]
    fn swapped_sigma_graphs_are_certified_impossible() {
        let mut g = Gluing::new();
        let swap = Arc::new(Obj::sigma_graph(&[], vec![1, 0]));
        let c = g.node("C", Arc::new(Obj::sigma_graph(&[], vec![])), MorphismClass::Emb);
        let a = g.node("A", swap.clone(), MorphismClass::Emb);
        let b = g.node("B", swap, MorphismClass::Emb);
        let d = g.node("D", Arc::new(Obj::graph(4, &[(0, 2)])), MorphismClass::Emb);
        g.arrow(c, a, &[]);
        g.arrow(c, b, &[]);
        g.arrow(a, d, &[0, 1]);
        g.arrow(b, d, &[2, 3]);
        let out = canonical_amalgam(&Category::SigmaGraph, &g).unwrap();
        assert!(matches!(out, Amalgam::Impossible(Obstruction::EndomorphismConsistency { .. })), "{out:?}");
    }

    #[test]
    fn bilinear_forms_extend_by_zero() {
        let c = Arc::new(Obj::bil(2, 0, vec![]));
        let l = Arc::new(Obj::bil(2, 1, vec![1]));
        let z = Morphism::from_columns(c.clone(), l.clone(), &[]).unwrap();
        let span = Span::new(z.clone(), z).unwrap();
        let out = span_amalgam(&Category::FinBil(2), MorphismClass::Emb, &span).unwrap();
        assert_eq!(*out.found().unwrap().apex, Obj::bil(2, 2, vec![1, 0, 0, 1]));
    }
}
