//! Pullbacks.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::Category;
use super::diagram::{Cospan, Square};
use super::linalg;
use super::morphism::Morphism;
use super::object::Obj;
use crate::{Error, Result};

/// The canonical pullback square of `cospan`. For table kinds the apex carrier is
/// the set of pairs `(a, b)` with equal images, in lexicographic order; for vector
/// spaces it is the kernel of `[f | -g]` with its reduced echelon basis.
pub fn pullback(cat: &Category, cospan: &Cospan) -> Result<Square> {
    if !cat.capabilities().pullback {
        return Err(Error::Capability(format!("{} has no pullbacks", cat.name())));
    }
    let (p1, p2) = pullback_legs(&cospan.left, &cospan.right)?;
    Square::new(p1, p2, cospan.left.clone(), cospan.right.clone())
}

fn pullback_legs(f: &Morphism, g: &Morphism) -> Result<(Morphism, Morphism)> {
    let (a, b) = (f.dom().clone(), g.dom().clone());
    match (&*a, &*b) {
        (Obj::Product(..), Obj::Product(..)) => {
            let ((fl, fr), (gl, gr)) = (f.split().expect("product"), g.split().expect("product"));
            let (l1, l2) = pullback_legs(&fl, &gl)?;
            let (r1, r2) = pullback_legs(&fr, &gr)?;
            Ok((Morphism::pair(&l1, &r1), Morphism::pair(&l2, &r2)))
        }
        (Obj::Tagged(t, _), Obj::Tagged(..)) => {
            let (l, r) = pullback_legs(&f.untag().expect("tagged"), &g.untag().expect("tagged"))?;
            Ok((l.tag(*t), r.tag(*t)))
        }
        (Obj::Vec { q, .. }, Obj::Vec { .. }) => {
            let fld = a.field().expect("linear");
            let (da, db, dm) = (a.dim().unwrap(), b.dim().unwrap(), f.cod().dim().unwrap());
            let (fc, gc) = (f.columns(), g.columns());
            let rows: Vec<Vec<u8>> = (0..dm)
                .map(|r| {
                    (0..da).map(|i| fc[i][r]).chain((0..db).map(|j| fld.neg(gc[j][r]))).collect()
                })
                .collect();
            let ker = linalg::kernel(fld, &rows, da + db);
            let p = Arc::new(Obj::vec(*q, ker.len() as u8));
            let c1: Vec<Vec<u8>> = ker.iter().map(|k| k[..da].to_vec()).collect();
            let c2: Vec<Vec<u8>> = ker.iter().map(|k| k[da..].to_vec()).collect();
            Ok((Morphism::from_columns(p.clone(), a.clone(), &c1)?, Morphism::from_columns(p, b.clone(), &c2)?))
        }
        (Obj::Set { .. }, _) | (Obj::Graph { .. }, _) | (Obj::SigmaSet { .. }, _) | (Obj::SigmaGraph { .. }, _) => {
            let pairs: Vec<(u32, u32)> = (0..a.card() as u32)
                .flat_map(|x| (0..b.card() as u32).map(move |y| (x, y)))
                .filter(|&(x, y)| f.apply(x) == g.apply(y))
                .collect();
            let index: HashMap<(u32, u32), u32> = pairs.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
            let n = pairs.len() as u32;
            let edges = || {
                let mut e = Vec::new();
                for (i, &(x, y)) in pairs.iter().enumerate() {
                    for (j, &(x2, y2)) in pairs.iter().enumerate().skip(i + 1) {
                        if a.has_edge(x, x2) && b.has_edge(y, y2) {
                            e.push((i as u32, j as u32));
                        }
                    }
                }
                e
            };
            let endo = || -> Vec<u32> {
                let (ea, eb) = (a.endo().expect("sigma"), b.endo().expect("sigma"));
                pairs.iter().map(|&(x, y)| index[&(ea[x as usize], eb[y as usize])]).collect()
            };
            let p = Arc::new(match &*a {
                Obj::Set { .. } => Obj::set(n),
                Obj::Graph { .. } => Obj::graph(n, &edges()),
                Obj::SigmaSet { .. } => Obj::sigma_set(endo()),
                _ => Obj::sigma_graph(&edges(), endo()),
            });
            let p1 = Morphism::new(p.clone(), a.clone(), pairs.iter().map(|p| p.0).collect())?;
            let p2 = Morphism::new(p, b.clone(), pairs.iter().map(|p| p.1).collect())?;
            Ok((p1, p2))
        }
        _ => Err(Error::Capability(format!("no pullback construction for {}", a.kind_tag()))),
    }
}

/// Comparison map `C -> P` from the square's apex into the canonical pullback, if it
/// is a morphism.
pub fn comparison(cat: &Category, sq: &Square) -> Result<Option<Morphism>> {
    let pb = pullback(cat, &sq.cocone())?;
    let index: HashMap<(u32, u32), u32> = (0..pb.c().card() as u32).map(|p| ((pb.ca.apply(p), pb.cb.apply(p)), p)).collect();
    let mut map = Vec::with_capacity(sq.c().card());
    for c in 0..sq.c().card() as u32 {
        match index.get(&(sq.ca.apply(c), sq.cb.apply(c))) {
            Some(&p) => map.push(p),
            None => return Ok(None),
        }
    }
    Ok(Morphism::new(sq.c().clone(), pb.c().clone(), map).ok())
}

/// Whether the commuting square is a pullback: the comparison map is an isomorphism.
pub fn is_pullback(cat: &Category, sq: &Square) -> Result<bool> {
    if !sq.commutes() {
        return Err(Error::MalformedDiagram("square does not commute".into()));
    }
    Ok(comparison(cat, sq)?.is_some_and(|u| u.is_iso()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::MorphismClass;

    fn arc(o: Obj) -> Arc<Obj> {
        Arc::new(o)
    }

    #[test]
    fn disjoint_images_give_empty_apex() {
        let (a, b, d) = (arc(Obj::set(1)), arc(Obj::set(1)), arc(Obj::set(2)));
        let cs = Cospan::new(Morphism::new(a, d.clone(), vec![0]).unwrap(), Morphism::new(b, d, vec![1]).unwrap()).unwrap();
        let sq = pullback(&Category::FinSet, &cs).unwrap();
        assert_eq!(**sq.c(), Obj::set(0));
    }

    #[test]
    fn same_subobject_twice_gives_itself() {
        let (a, d) = (arc(Obj::graph(2, &[(0, 1)])), arc(Obj::graph(3, &[(0, 1), (1, 2)])));
        let m = Morphism::new(a.clone(), d, vec![1, 2]).unwrap();
        let sq = pullback(&Category::FinGraph, &Cospan::new(m.clone(), m).unwrap()).unwrap();
        assert!(Category::FinGraph.isomorphic(sq.c(), &a));
        assert!(sq.ca.is_iso() && sq.cb.is_iso());
    }

    #[test]
    fn distinct_lines_in_the_plane_meet_in_zero() {
        let (l, p) = (arc(Obj::vec(2, 1)), arc(Obj::vec(2, 2)));
        // span{(1,0)} is carrier element 1; span{(1,1)} is element 3.
        let u = Morphism::new(l.clone(), p.clone(), vec![0, 1]).unwrap();
        let w = Morphism::new(l, p, vec![0, 3]).unwrap();
        let sq = pullback(&Category::FinVec(2), &Cospan::new(u, w).unwrap()).unwrap();
        assert_eq!(sq.c().dim(), Some(0));
    }

    #[test]
    fn pullbacks_of_sets_are_recognised() {
        let cat = Category::FinSet;
        let (e, a, m) = (arc(Obj::set(0)), arc(Obj::set(1)), arc(Obj::set(1)));
        let id = Morphism::identity(&a);
        let empty = Morphism::new(e, a.clone(), vec![]).unwrap();
        let sq = Square::new(empty.clone(), empty, id.clone(), Morphism::new(a, m, vec![0]).unwrap()).unwrap();
        assert!(!is_pullback(&cat, &sq).unwrap());
        let pb = pullback(&cat, &sq.cocone()).unwrap();
        assert!(is_pullback(&cat, &pb).unwrap());
        assert!(pb.morphisms().iter().all(|m| MorphismClass::Mono.contains(m)));
    }

    #[test]
    fn conn_graph_has_no_pullback_capability() {
        let a = arc(Obj::graph(1, &[]));
        let id = Morphism::identity(&a);
        assert!(matches!(
            pullback(&Category::ConnGraph, &Cospan::new(id.clone(), id).unwrap()),
            Err(Error::Capability(_))
        ));
    }
}
