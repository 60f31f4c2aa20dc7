//! Multipushouts: families of cocones over a span through which every cocone
//! factors via exactly one instance and exactly one morphism.

use std::ops::ControlFlow;
use std::sync::Arc;

use super::category::{is_connected, Category, DEFAULT_HOM_CAP};
use super::class::MorphismClass;
use super::colimit::{glue, GlueError, Gluing};
use super::diagram::{Arrow, Cospan, Diagram, Span};
use super::enumerate::{Enumerator, NodeDomain, Shape};
use super::morphism::Morphism;
use super::object::Obj;
use crate::{Error, Result};

/// Most candidate amalgams examined by the bounded search.
pub const AMALGAM_CAP: usize = 200_000;

/// Instances of the multipushout of `span`. Kinds with pushouts return the pushout
/// alone (or nothing when no cocone exists); connected graphs use a bounded search
/// over jointly surjective cocones with at most `bound` vertices.
pub fn multipushout(cat: &Category, span: &Span, bound: usize) -> Result<Vec<Cospan>> {
    if !cat.capabilities().multipushout {
        return Err(Error::Capability(format!("{} has no multipushouts", cat.name())));
    }
    match cat {
        Category::ConnGraph => connected_amalgams(span, bound),
        Category::Coproduct(cats) => {
            let Obj::Tagged(t, _) = &**span.apex() else {
                return Err(Error::Kind("coproduct span must be tagged".into()));
            };
            let inner = Span::new(untag(&span.left)?, untag(&span.right)?)?;
            let sub = cats.get(*t as usize).ok_or_else(|| Error::Kind(format!("no summand {t}")))?;
            multipushout(sub, &inner, bound)?
                .into_iter()
                .map(|c| Cospan::new(c.left.tag(*t), c.right.tag(*t)))
                .collect()
        }
        Category::Product(l, r) => {
            let ((ll, lr), (rl, rr)) = (split(&span.left)?, split(&span.right)?);
            let left = multipushout(l, &Span::new(ll, rl)?, bound)?;
            let right = multipushout(r, &Span::new(lr, rr)?, bound)?;
            let mut out = Vec::new();
            for a in &left {
                for b in &right {
                    out.push(Cospan::new(Morphism::pair(&a.left, &b.left), Morphism::pair(&a.right, &b.right))?);
                }
            }
            Ok(out)
        }
        _ => {
            let g = span_gluing(span);
            match glue(cat, &g) {
                Ok(out) => Ok(vec![Cospan::new(out.leg(&g, 1), out.leg(&g, 2))?]),
                Err(GlueError::Obstructed(_)) => Ok(Vec::new()),
                Err(GlueError::Unresolved(msg)) => Err(Error::Construction(msg)),
            }
        }
    }
}

fn untag(m: &Morphism) -> Result<Morphism> {
    m.untag().ok_or_else(|| Error::Kind("expected a tagged morphism".into()))
}

fn split(m: &Morphism) -> Result<(Morphism, Morphism)> {
    m.split().ok_or_else(|| Error::Kind("expected a product morphism".into()))
}

fn span_gluing(span: &Span) -> Gluing {
    let mut g = Gluing::new();
    let c = g.node("C", span.apex().clone(), MorphismClass::All);
    let a = g.node("A", span.left.cod().clone(), MorphismClass::All);
    let b = g.node("B", span.right.cod().clone(), MorphismClass::All);
    g.arrow(c, a, span.left.map());
    g.arrow(c, b, span.right.map());
    g
}

/// Restricted growth strings of length `n` with at most `k` blocks.
fn partitions(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn go(cur: &mut Vec<u32>, n: usize, k: usize, blocks: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            if b as usize >= k {
                break;
            }
            cur.push(b);
            go(cur, n, k, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), n, k, 0, &mut out);
    out
}

struct Amalgam {
    blocks: Vec<u32>,
    size: u32,
    edges: Vec<(u32, u32)>,
}

impl Amalgam {
    /// Whether the cocone `other` maps to `self` compatibly with the legs.
    fn receives(&self, other: &Amalgam) -> bool {
        let n = other.blocks.len();
        let mut to = vec![u32::MAX; other.size as usize];
        for x in 0..n {
            let (s, t) = (other.blocks[x] as usize, self.blocks[x]);
            if to[s] != u32::MAX && to[s] != t {
                return false;
            }
            to[s] = t;
        }
        other.edges.iter().all(|&(u, v)| {
            let (a, b) = (to[u as usize], to[v as usize]);
            a != b && self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
        })
    }
}

fn connected_amalgams(span: &Span, bound: usize) -> Result<Vec<Cospan>> {
    let (a, b) = (span.left.cod().clone(), span.right.cod().clone());
    let mut g = Gluing::new();
    let ci = g.node("C", Arc::new(Obj::set(span.apex().card() as u32)), MorphismClass::All);
    let ai = g.node("A", Arc::new(Obj::set(a.card() as u32)), MorphismClass::All);
    let bi = g.node("B", Arc::new(Obj::set(b.card() as u32)), MorphismClass::All);
    g.arrow(ci, ai, span.left.map());
    g.arrow(ci, bi, span.right.map());
    let base = glue(&Category::FinSet, &g).map_err(|e| Error::Construction(format!("{e:?}")))?;
    let n = base.apex.card();
    let forced: Vec<(u32, u32)> = [(&a, &base.legs[ai]), (&b, &base.legs[bi])]
        .iter()
        .flat_map(|(o, leg)| o.edges().unwrap_or(&[]).iter().map(|&(u, v)| (leg[u as usize], leg[v as usize])))
        .collect();

    let mut cands: Vec<Amalgam> = Vec::new();
    for blocks in partitions(n, bound) {
        let size = blocks.iter().max().map_or(0, |&m| m + 1);
        let mut req: Vec<(u32, u32)> = Vec::new();
        let mut looped = false;
        for &(u, v) in &forced {
            let (p, q) = (blocks[u as usize], blocks[v as usize]);
            looped |= p == q;
            req.push((p.min(q), p.max(q)));
        }
        if looped || size == 0 {
            continue;
        }
        req.sort_unstable();
        req.dedup();
        let optional: Vec<(u32, u32)> = (0..size)
            .flat_map(|u| (u + 1..size).map(move |v| (u, v)))
            .filter(|e| req.binary_search(e).is_err())
            .collect();
        if optional.len() > 20 {
            return Err(Error::ScopeExceeded("too many optional edges in amalgam search".into()));
        }
        for mask in 0u32..(1 << optional.len()) {
            let mut edges = req.clone();
            edges.extend(optional.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            edges.sort_unstable();
            if is_connected(size, &edges) {
                cands.push(Amalgam { blocks: blocks.clone(), size, edges });
                if cands.len() > AMALGAM_CAP {
                    return Err(Error::ScopeExceeded("amalgam search exceeds its cap".into()));
                }
            }
        }
    }
    let keep: Vec<&Amalgam> = cands
        .iter()
        .enumerate()
        .filter(|&(i, k)| cands.iter().enumerate().all(|(j, o)| i == j || !k.receives(o)))
        .map(|(_, k)| k)
        .collect();
    keep.into_iter()
        .map(|k| {
            let apex = Arc::new(Obj::graph(k.size, &k.edges));
            let leg = |o: &Arc<Obj>, l: &[u32]| Morphism::new(o.clone(), apex.clone(), l.iter().map(|&x| k.blocks[x as usize]).collect());
            Cospan::new(leg(&a, &base.legs[ai])?, leg(&b, &base.legs[bi])?)
        })
        .collect()
}

/// Number of morphisms `k.apex -> target` compatible with the legs of `k` and `(i, j)`.
pub fn count_factorizations(cat: &Category, k: &Cospan, i: &Morphism, j: &Morphism) -> Result<usize> {
    if !k.apex().same_kind(i.cod()) {
        return Ok(0);
    }
    let mut cons: Vec<(u32, u32)> = (0..i.dom().card() as u32).map(|x| (k.left.apply(x), i.apply(x))).collect();
    cons.extend((0..j.dom().card() as u32).map(|x| (k.right.apply(x), j.apply(x))));
    Ok(cat.hom_constrained(k.apex(), i.cod(), MorphismClass::All, &cons, DEFAULT_HOM_CAP)?.len())
}

/// First cocone over `span` with apex of size at most `bound` that does not factor
/// through exactly one instance via exactly one morphism.
pub fn multipushout_violation(cat: &Category, span: &Span, instances: &[Cospan], bound: usize) -> Result<Option<Diagram>> {
    let prefix = Diagram {
        labels: vec!["C".into(), "A".into(), "B".into()],
        nodes: vec![span.apex().clone(), span.left.cod().clone(), span.right.cod().clone()],
        arrows: vec![
            Arrow { src: 0, dst: 1, map: span.left.clone() },
            Arrow { src: 0, dst: 2, map: span.right.clone() },
        ],
    };
    let shape = Shape::new(&["C", "A", "B", "G"], &[("C", "A"), ("C", "B"), ("A", "G"), ("B", "G")]);
    let mut bad = None;
    let mut err = None;
    Enumerator::new(cat, shape, MorphismClass::All, bound)
        .prefix(prefix)
        .domain("G", NodeDomain::UpTo(bound))
        .run(|d| {
            let (i, j) = (d.arrow("A", "G").expect("shape"), d.arrow("B", "G").expect("shape"));
            let mut total = 0;
            for k in instances {
                match count_factorizations(cat, k, i, j) {
                    Ok(c) => total += c,
                    Err(e) => {
                        err = Some(e);
                        return ControlFlow::Break(());
                    }
                }
            }
            if total != 1 {
                bad = Some(d.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
    match err {
        Some(e) => Err(e),
        None => Ok(bad),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(o: Obj) -> Arc<Obj> {
        Arc::new(o)
    }

    fn points_over_empty(kind: fn(u32) -> Obj) -> Span {
        let (e, x, y) = (arc(kind(0)), arc(kind(1)), arc(kind(1)));
        Span::new(Morphism::new(e.clone(), x, vec![]).unwrap(), Morphism::new(e, y, vec![]).unwrap()).unwrap()
    }

    #[test]
    fn identity_span_absorbs() {
        let a = arc(Obj::graph(2, &[(0, 1)]));
        let id = Morphism::identity(&a);
        let out = multipushout(&Category::FinGraph, &Span::new(id.clone(), id).unwrap(), 4).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].left.is_iso() && out[0].right.is_iso());
    }

    #[test]
    fn graphs_take_the_disjoint_union() {
        let span = points_over_empty(|n| Obj::graph(n, &[]));
        let out = multipushout(&Category::FinGraph, &span, 3).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(**out[0].apex(), Obj::graph(2, &[]));
        assert_eq!(multipushout_violation(&Category::FinGraph, &span, &out, 3).unwrap(), None);
    }

    #[test]
    fn connected_graphs_have_two_amalgams_of_two_points() {
        let span = points_over_empty(|n| Obj::graph(n, &[]));
        let out = multipushout(&Category::ConnGraph, &span, 4).unwrap();
        let apexes: Vec<Obj> = out.iter().map(|c| (**c.apex()).clone()).collect();
        assert_eq!(apexes, vec![Obj::graph(1, &[]), Obj::graph(2, &[(0, 1)])]);
    }

    #[test]
    fn forced_loop_leaves_no_instance() {
        let (c, a, b) = (arc(Obj::graph(2, &[])), arc(Obj::graph(1, &[])), arc(Obj::graph(2, &[(0, 1)])));
        let span = Span::new(Morphism::new(c.clone(), a, vec![0, 0]).unwrap(), Morphism::new(c, b, vec![0, 1]).unwrap()).unwrap();
        assert!(multipushout(&Category::FinGraph, &span, 3).unwrap().is_empty());
    }

    #[test]
    fn bilinear_spaces_lack_the_capability() {
        let span = points_over_empty(Obj::set);
        assert!(matches!(multipushout(&Category::FinBil(2), &span, 2), Err(Error::Capability(_))));
    }
}
