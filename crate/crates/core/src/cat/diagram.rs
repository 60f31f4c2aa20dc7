//! Spans, cospans, commuting squares and general finite diagrams.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::morphism::Morphism;
use super::object::Obj;
use crate::{Error, Result};

/// `C -> A`, `C -> B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub left: Morphism,
    pub right: Morphism,
}

impl Span {
    pub fn new(left: Morphism, right: Morphism) -> Result<Span> {
        if left.dom() != right.dom() {
            return Err(Error::MalformedDiagram("span legs have different domains".into()));
        }
        Ok(Span { left, right })
    }

    pub fn apex(&self) -> &Arc<Obj> {
        self.left.dom()
    }
}

/// `A -> D`, `B -> D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cospan {
    pub left: Morphism,
    pub right: Morphism,
}

impl Cospan {
    pub fn new(left: Morphism, right: Morphism) -> Result<Cospan> {
        if left.cod() != right.cod() {
            return Err(Error::MalformedDiagram("cospan legs have different codomains".into()));
        }
        Ok(Cospan { left, right })
    }

    pub fn apex(&self) -> &Arc<Obj> {
        self.left.cod()
    }
}

/// Base span `C -> A`, `C -> B` with cocone `A -> M`, `B -> M`.
///
/// Read as "A independent from B over C inside M" when classified.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub ca: Morphism,
    pub cb: Morphism,
    pub am: Morphism,
    pub bm: Morphism,
}

impl Square {
    /// Checks endpoints (not commutativity).
    pub fn new(ca: Morphism, cb: Morphism, am: Morphism, bm: Morphism) -> Result<Square> {
        let sq = Square { ca, cb, am, bm };
        sq.check_endpoints()?;
        Ok(sq)
    }

    pub fn from_parts(span: Span, cocone: Cospan) -> Result<Square> {
        Square::new(span.left, span.right, cocone.left, cocone.right)
    }

    pub fn check_endpoints(&self) -> Result<()> {
        let ok = self.ca.dom() == self.cb.dom()
            && self.ca.cod() == self.am.dom()
            && self.cb.cod() == self.bm.dom()
            && self.am.cod() == self.bm.cod();
        if ok {
            Ok(())
        } else {
            Err(Error::MalformedDiagram("square morphisms have mismatched endpoints".into()))
        }
    }

    pub fn c(&self) -> &Arc<Obj> {
        self.ca.dom()
    }

    pub fn a(&self) -> &Arc<Obj> {
        self.ca.cod()
    }

    pub fn b(&self) -> &Arc<Obj> {
        self.cb.cod()
    }

    pub fn m(&self) -> &Arc<Obj> {
        self.am.cod()
    }

    pub fn span(&self) -> Span {
        Span { left: self.ca.clone(), right: self.cb.clone() }
    }

    pub fn cocone(&self) -> Cospan {
        Cospan { left: self.am.clone(), right: self.bm.clone() }
    }

    /// Whether both composites `C -> M` agree pointwise.
    pub fn commutes(&self) -> bool {
        let c = self.c().card() as u32;
        (0..c).all(|x| self.am.apply(self.ca.apply(x)) == self.bm.apply(self.cb.apply(x)))
    }

    /// The square with `A` and `B` exchanged.
    pub fn transpose(&self) -> Square {
        Square { ca: self.cb.clone(), cb: self.ca.clone(), am: self.bm.clone(), bm: self.am.clone() }
    }

    /// The square with `M -> N` appended to the cocone.
    pub fn extend(&self, mn: &Morphism) -> Result<Square> {
        Square::new(self.ca.clone(), self.cb.clone(), self.am.then(mn)?, self.bm.then(mn)?)
    }

    pub fn morphisms(&self) -> [&Morphism; 4] {
        [&self.ca, &self.cb, &self.am, &self.bm]
    }

    pub fn to_diagram(&self) -> Diagram {
        Diagram {
            labels: vec!["C".into(), "A".into(), "B".into(), "M".into()],
            nodes: vec![self.c().clone(), self.a().clone(), self.b().clone(), self.m().clone()],
            arrows: vec![
                Arrow { src: 0, dst: 1, map: self.ca.clone() },
                Arrow { src: 0, dst: 2, map: self.cb.clone() },
                Arrow { src: 1, dst: 3, map: self.am.clone() },
                Arrow { src: 2, dst: 3, map: self.bm.clone() },
            ],
        }
    }
}

/// `true` iff the square commutes; mismatched endpoints are an error.
pub fn is_commuting_square(sq: &Square) -> Result<bool> {
    sq.check_endpoints()?;
    Ok(sq.commutes())
}

/// A labelled arrow of a [`Diagram`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub map: Morphism,
}

/// A finite diagram with labelled nodes. Arrows always go from a lower to a higher
/// node index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "DiagramRepr", try_from = "DiagramRepr")]
pub struct Diagram {
    pub labels: Vec<String>,
    pub nodes: Vec<Arc<Obj>>,
    pub arrows: Vec<Arrow>,
}

impl Diagram {
    /// A diagram from labelled objects and arrows `(src, dst, table)`; every table is
    /// validated, commutativity is not.
    pub fn build(nodes: Vec<(&str, Obj)>, arrows: Vec<(&str, &str, Vec<u32>)>) -> Result<Diagram> {
        let labels: Vec<String> = nodes.iter().map(|(l, _)| l.to_string()).collect();
        let objs: Vec<Arc<Obj>> = nodes.into_iter().map(|(_, o)| Arc::new(o)).collect();
        let idx = |l: &str| {
            labels.iter().position(|x| x == l).ok_or_else(|| Error::MalformedDiagram(format!("unknown node `{l}`")))
        };
        let arrows = arrows
            .into_iter()
            .map(|(s, t, map)| {
                let (s, t) = (idx(s)?, idx(t)?);
                Ok(Arrow { src: s, dst: t, map: Morphism::new(objs[s].clone(), objs[t].clone(), map)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Diagram { labels, nodes: objs, arrows })
    }

    pub fn node(&self, label: &str) -> Option<&Arc<Obj>> {
        self.labels.iter().position(|l| l == label).map(|i| &self.nodes[i])
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::MalformedDiagram(format!("diagram has no node `{label}`")))
    }

    /// The arrow `src -> dst` by label.
    pub fn arrow(&self, src: &str, dst: &str) -> Result<&Morphism> {
        let (s, d) = (self.index(src)?, self.index(dst)?);
        self.arrows
            .iter()
            .find(|a| a.src == s && a.dst == d)
            .map(|a| &a.map)
            .ok_or_else(|| Error::MalformedDiagram(format!("diagram has no arrow {src} -> {dst}")))
    }

    /// Composite along any path `src -> ... -> dst` (all paths agree in a commuting diagram).
    pub fn path(&self, src: &str, dst: &str) -> Result<Morphism> {
        let (s, d) = (self.index(src)?, self.index(dst)?);
        self.path_idx(s, d)
            .ok_or_else(|| Error::MalformedDiagram(format!("no path {src} -> {dst}")))
    }

    pub(crate) fn path_idx(&self, s: usize, d: usize) -> Option<Morphism> {
        if s == d {
            return Some(Morphism::identity(&self.nodes[s]));
        }
        let mut route = Vec::new();
        if !self.route(s, d, &mut route) {
            return None;
        }
        let mut it = route.into_iter().rev().map(|i| &self.arrows[i].map);
        let first = it.next()?.clone();
        it.try_fold(first, |acc, m| Morphism::compose(m, &acc).ok())
    }

    /// Arrow indices of some path `s -> d`, last arrow first; `s != d`.
    fn route(&self, s: usize, d: usize, out: &mut Vec<usize>) -> bool {
        if let Some(i) = self.arrows.iter().position(|a| a.src == s && a.dst == d) {
            out.push(i);
            return true;
        }
        for (i, a) in self.arrows.iter().enumerate().filter(|(_, a)| a.src == s) {
            if self.route(a.dst, d, out) {
                out.push(i);
                return true;
            }
        }
        false
    }

    /// Square `(C; A, B; M)` read off by labels, using composites where needed.
    pub fn square(&self, c: &str, a: &str, b: &str, m: &str) -> Result<Square> {
        Square::new(self.path(c, a)?, self.path(c, b)?, self.path(a, m)?, self.path(b, m)?)
    }

    /// Every pair of parallel paths agrees.
    pub fn commutes(&self) -> bool {
        let n = self.nodes.len();
        let mut comp: Vec<Vec<Option<Vec<u32>>>> = vec![vec![None; n]; n];
        for k in 0..n {
            for a in self.arrows.iter().filter(|a| a.dst == k) {
                let mut cands: Vec<(usize, Vec<u32>)> = vec![(a.src, a.map.map().to_vec())];
                #[allow(clippy::needless_range_loop)]
                for i in 0..a.src {
                    if let Some(t) = &comp[i][a.src] {
                        cands.push((i, t.iter().map(|&x| a.map.apply(x)).collect()));
                    }
                }
                for (i, t) in cands {
                    match &comp[i][k] {
                        Some(prev) if *prev != t => return false,
                        Some(_) => {}
                        None => comp[i][k] = Some(t),
                    }
                }
            }
        }
        true
    }

    pub fn total_size(&self) -> usize {
        self.nodes.iter().map(|o| o.size()).sum()
    }

    /// Enumeration order key: total size, then the size vector sorted descending
    /// (smaller largest objects first), then sizes by node, then the tables.
    pub fn order_key(&self) -> (usize, Vec<usize>, Vec<usize>, Vec<Vec<u32>>) {
        let sizes: Vec<usize> = self.nodes.iter().map(|o| o.size()).collect();
        let mut desc = sizes.clone();
        desc.sort_unstable_by(|a, b| b.cmp(a));
        let tables = self.arrows.iter().map(|a| a.map.map().to_vec()).collect();
        (self.total_size(), desc, sizes, tables)
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowRepr {
    from: String,
    to: String,
    map: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    objects: Vec<NamedObj>,
    arrows: Vec<ArrowRepr>,
}

#[derive(Serialize, Deserialize)]
struct NamedObj {
    label: String,
    object: Obj,
}

impl From<Diagram> for DiagramRepr {
    fn from(d: Diagram) -> Self {
        DiagramRepr {
            objects: d
                .labels
                .iter()
                .zip(&d.nodes)
                .map(|(l, o)| NamedObj { label: l.clone(), object: (**o).clone() })
                .collect(),
            arrows: d
                .arrows
                .iter()
                .map(|a| ArrowRepr { from: d.labels[a.src].clone(), to: d.labels[a.dst].clone(), map: a.map.map().to_vec() })
                .collect(),
        }
    }
}

impl TryFrom<DiagramRepr> for Diagram {
    type Error = Error;

    fn try_from(r: DiagramRepr) -> Result<Diagram> {
        let labels: Vec<String> = r.objects.iter().map(|o| o.label.clone()).collect();
        let nodes: Vec<Arc<Obj>> = r.objects.into_iter().map(|o| Arc::new(o.object)).collect();
        let find = |l: &str| {
            labels.iter().position(|x| x == l).ok_or_else(|| Error::Parse(format!("arrow endpoint `{l}` is not a node")))
        };
        let mut arrows = Vec::new();
        for a in r.arrows {
            let (src, dst) = (find(&a.from)?, find(&a.to)?);
            if src >= dst {
                return Err(Error::Parse("arrows must go from earlier to later nodes".into()));
            }
            let map = Morphism::new(nodes[src].clone(), nodes[dst].clone(), a.map)?;
            arrows.push(Arrow { src, dst, map });
        }
        Ok(Diagram { labels, nodes, arrows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inc(a: &Arc<Obj>, b: &Arc<Obj>, map: Vec<u32>) -> Morphism {
        Morphism::new(a.clone(), b.clone(), map).unwrap()
    }

    #[test]
    fn empty_base_always_commutes() {
        let e = Arc::new(Obj::set(0));
        let a = Arc::new(Obj::set(1));
        let m = Arc::new(Obj::set(2));
        let sq = Square::new(inc(&e, &a, vec![]), inc(&e, &a, vec![]), inc(&a, &m, vec![0]), inc(&a, &m, vec![1])).unwrap();
        assert!(is_commuting_square(&sq).unwrap());
    }

    #[test]
    fn singleton_base_agreement_decides_commutativity() {
        let one = Arc::new(Obj::set(1));
        let two = Arc::new(Obj::set(2));
        let id = Morphism::identity(&one);
        let good = Square::new(id.clone(), id.clone(), inc(&one, &two, vec![0]), inc(&one, &two, vec![0])).unwrap();
        let bad = Square::new(id.clone(), id, inc(&one, &two, vec![0]), inc(&one, &two, vec![1])).unwrap();
        assert!(is_commuting_square(&good).unwrap());
        assert!(!is_commuting_square(&bad).unwrap());
    }

    #[test]
    fn mismatched_square_is_malformed() {
        let one = Arc::new(Obj::set(1));
        let two = Arc::new(Obj::set(2));
        let id = Morphism::identity(&one);
        let r = Square::new(id.clone(), id.clone(), id, inc(&one, &two, vec![0]));
        assert!(matches!(r, Err(Error::MalformedDiagram(_))));
    }

    #[test]
    fn diagram_json_roundtrip() {
        let e = Arc::new(Obj::set(0));
        let a = Arc::new(Obj::set(1));
        let sq = Square::new(inc(&e, &a, vec![]), inc(&e, &a, vec![]), Morphism::identity(&a), Morphism::identity(&a)).unwrap();
        let d = sq.to_diagram();
        let s = serde_json::to_string(&d).unwrap();
        let back: Diagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.square("C", "A", "B", "M").unwrap(), sq);
    }
}
