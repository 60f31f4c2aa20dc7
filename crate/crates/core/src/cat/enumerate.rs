//! Exhaustive enumeration of commuting diagrams of a fixed shape.
//!
//! Nodes are filled in index order; all arrows into a node are chosen together,
//! constrained by commutativity with every path already present. The tuple of
//! incoming arrows of each non-prefix node is kept only if it is lexicographically
//! least in its orbit under the automorphisms of that node, so every diagram is
//! produced at least once up to isomorphism (and usually exactly once).

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::category::{Category, DEFAULT_HOM_CAP};
use super::class::MorphismClass;
use super::diagram::{Arrow, Diagram};
use super::morphism::Morphism;
use super::object::Obj;
use crate::{Error, Result};

/// Node labels plus arrows `(src, dst)` with `src < dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl Shape {
    /// Builds a shape from labels and labelled edges; panics on unknown labels or
    /// edges that go backwards (shapes are static data).
    pub fn new(labels: &[&str], edges: &[(&str, &str)]) -> Shape {
        let idx = |l: &str| labels.iter().position(|x| *x == l).unwrap_or_else(|| panic!("unknown node {l}"));
        let edges = edges
            .iter()
            .map(|&(s, d)| {
                let (s, d) = (idx(s), idx(d));
                assert!(s < d, "shape edges must go forward");
                (s, d)
            })
            .collect();
        Shape { labels: labels.iter().map(|s| s.to_string()).collect(), edges }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Objects allowed at a node.
#[derive(Clone, Debug)]
pub enum NodeDomain {
    /// All objects of size at most the bound, up to isomorphism.
    UpTo(usize),
    Among(Vec<Obj>),
}

/// Counters reported by a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub diagrams: usize,
    /// The budget ran out before the space was exhausted.
    pub truncated: bool,
    /// The callback requested a stop.
    pub stopped: bool,
}

type Prune<'a> = Box<dyn Fn(&Diagram) -> bool + 'a>;

pub struct Enumerator<'a> {
    cat: &'a Category,
    shape: Shape,
    classes: Vec<MorphismClass>,
    domains: Vec<NodeDomain>,
    prefix: Option<Diagram>,
    hom_cap: usize,
    budget: Option<usize>,
    reduce: bool,
    prune: Option<Prune<'a>>,
}

impl<'a> Enumerator<'a> {
    /// Every arrow in `cls`, every node up to `max_size`.
    pub fn new(cat: &'a Category, shape: Shape, cls: MorphismClass, max_size: usize) -> Self {
        let n = shape.len();
        let classes = vec![cls; shape.edges.len()];
        Enumerator {
            cat,
            shape,
            classes,
            domains: vec![NodeDomain::UpTo(max_size); n],
            prefix: None,
            hom_cap: DEFAULT_HOM_CAP,
            budget: None,
            reduce: true,
            prune: None,
        }
    }

    pub fn edge_class(mut self, src: &str, dst: &str, cls: MorphismClass) -> Self {
        let (s, d) = (self.shape.index(src).expect("known node"), self.shape.index(dst).expect("known node"));
        let e = self.shape.edges.iter().position(|&x| x == (s, d)).expect("known edge");
        self.classes[e] = cls;
        self
    }

    pub fn domain(mut self, label: &str, dom: NodeDomain) -> Self {
        let i = self.shape.index(label).expect("known node");
        self.domains[i] = dom;
        self
    }

    /// Fixes the first nodes and their arrows; the prefix must use the same labels
    /// in the same order.
    pub fn prefix(mut self, prefix: Diagram) -> Self {
        self.prefix = Some(prefix);
        self
    }

    pub fn hom_cap(mut self, cap: usize) -> Self {
        self.hom_cap = cap;
        self
    }

    pub fn budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn reduce(mut self, on: bool) -> Self {
        self.reduce = on;
        self
    }

    /// Called on each partial diagram after a node is completed; `false` skips the subtree.
    pub fn prune(mut self, p: impl Fn(&Diagram) -> bool + 'a) -> Self {
        self.prune = Some(Box::new(p));
        self
    }

    pub fn run(&self, mut visit: impl FnMut(&Diagram) -> ControlFlow<()>) -> Result<EnumStats> {
        let n = self.shape.len();
        let mut state = State {
            nodes: Vec::with_capacity(n),
            arrows: vec![None; self.shape.edges.len()],
            comp: vec![vec![None; n]; n],
            auts: HashMap::new(),
            stats: EnumStats::default(),
        };
        let mut start = 0;
        if let Some(p) = &self.prefix {
            start = p.nodes.len();
            if start > n || p.labels[..] != self.shape.labels[..start] {
                return Err(Error::MalformedDiagram("prefix does not match the shape".into()));
            }
            state.nodes.extend(p.nodes.iter().cloned());
            for a in &p.arrows {
                let e = self
                    .shape
                    .edges
                    .iter()
                    .position(|&x| x == (a.src, a.dst))
                    .ok_or_else(|| Error::MalformedDiagram("prefix arrow is not a shape edge".into()))?;
                state.arrows[e] = Some(a.map.clone());
            }
            for k in 0..start {
                if !state.absorb_node(&self.shape, k) {
                    return Err(Error::MalformedDiagram("prefix does not commute".into()));
                }
            }
        }
        let mut pools: Vec<Vec<Arc<Obj>>> = Vec::with_capacity(n);
        let mut by_bound: HashMap<usize, Vec<Arc<Obj>>> = HashMap::new();
        for d in &self.domains {
            pools.push(match d {
                NodeDomain::UpTo(b) => {
                    if !by_bound.contains_key(b) {
                        by_bound.insert(*b, self.cat.objects(*b)?.into_iter().map(Arc::new).collect());
                    }
                    by_bound[b].clone()
                }
                NodeDomain::Among(v) => v.iter().cloned().map(Arc::new).collect(),
            });
        }
        let _ = self.node(start, &pools, &mut state, &mut visit)?;
        Ok(state.stats)
    }

    fn node(
        &self,
        k: usize,
        pools: &[Vec<Arc<Obj>>],
        st: &mut State,
        visit: &mut dyn FnMut(&Diagram) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if k == self.shape.len() {
            if self.budget.is_some_and(|b| st.stats.diagrams >= b) {
                st.stats.truncated = true;
                return Ok(ControlFlow::Break(()));
            }
            st.stats.diagrams += 1;
            let d = st.diagram(&self.shape);
            if visit(&d).is_break() {
                st.stats.stopped = true;
                return Ok(ControlFlow::Break(()));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let incoming: Vec<usize> =
            self.shape.edges.iter().enumerate().filter(|(_, e)| e.1 == k).map(|(i, _)| i).collect();
        for obj in &pools[k] {
            st.nodes.push(obj.clone());
            let mut compk: Vec<Option<Vec<u32>>> = vec![None; k];
            let flow = self.incoming(k, &incoming, 0, &mut compk, pools, st, visit)?;
            st.nodes.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    #[allow(clippy::too_many_arguments)]
    fn incoming(
        &self,
        k: usize,
        edges: &[usize],
        t: usize,
        compk: &mut Vec<Option<Vec<u32>>>,
        pools: &[Vec<Arc<Obj>>],
        st: &mut State,
        visit: &mut dyn FnMut(&Diagram) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if t == edges.len() {
            if self.reduce && !self.is_orbit_minimal(k, edges, st)? {
                return Ok(ControlFlow::Continue(()));
            }
            let saved: Vec<Option<Vec<u32>>> = (0..k).map(|i| st.comp[i][k].take()).collect();
            for (i, c) in compk.iter().enumerate() {
                st.comp[i][k] = c.clone();
            }
            let keep = match &self.prune {
                Some(p) => p(&st.partial(&self.shape, k + 1)),
                None => true,
            };
            let flow = if keep { self.node(k + 1, pools, st, visit)? } else { ControlFlow::Continue(()) };
            for (i, c) in saved.into_iter().enumerate() {
                st.comp[i][k] = c;
            }
            return Ok(flow);
        }
        let e = edges[t];
        let j = self.shape.edges[e].0;
        let mut constraints = Vec::new();
        for i in 0..=j {
            let Some(target) = &compk.get(i).and_then(|c| c.clone()) else { continue };
            if i == j {
                constraints.extend(target.iter().enumerate().map(|(x, &y)| (x as u32, y)));
            } else if let Some(path) = &st.comp[i][j] {
                constraints.extend(path.iter().zip(target).map(|(&x, &y)| (x, y)));
            }
        }
        let src = st.nodes[j].clone();
        let dst = st.nodes[k].clone();
        let homs = self.cat.hom_constrained(&src, &dst, self.classes[e], &constraints, self.hom_cap)?;
        for f in homs {
            let before = compk.clone();
            compk[j] = Some(f.map().to_vec());
            #[allow(clippy::needless_range_loop)]
            for i in 0..j {
                if let Some(path) = &st.comp[i][j] {
                    compk[i] = Some(path.iter().map(|&x| f.apply(x)).collect());
                }
            }
            st.arrows[e] = Some(f);
            let flow = self.incoming(k, edges, t + 1, compk, pools, st, visit)?;
            st.arrows[e] = None;
            *compk = before;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn is_orbit_minimal(&self, k: usize, edges: &[usize], st: &mut State) -> Result<bool> {
        if edges.is_empty() {
            return Ok(true);
        }
        let obj = st.nodes[k].clone();
        if !st.auts.contains_key(&*obj) {
            let auts = self.cat.automorphisms(&obj)?;
            st.auts.insert((*obj).clone(), auts);
        }
        let auts = &st.auts[&*obj];
        for alpha in auts {
            let mut ord = std::cmp::Ordering::Equal;
            'outer: for &e in edges {
                let f = st.arrows[e].as_ref().expect("chosen");
                for &y in f.map() {
                    let z = alpha.apply(y);
                    if z != y {
                        ord = z.cmp(&y);
                        break 'outer;
                    }
                }
            }
            if ord == std::cmp::Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct State {
    nodes: Vec<Arc<Obj>>,
    arrows: Vec<Option<Morphism>>,
    comp: Vec<Vec<Option<Vec<u32>>>>,
    auts: HashMap<Obj, Vec<Morphism>>,
    stats: EnumStats,
}

impl State {
    /// Records composites into prefix node `k`; `false` if two paths disagree.
    fn absorb_node(&mut self, shape: &Shape, k: usize) -> bool {
        for (e, &(j, d)) in shape.edges.iter().enumerate() {
            if d != k {
                continue;
            }
            let Some(f) = self.arrows[e].clone() else { return false };
            let mut cands = vec![(j, f.map().to_vec())];
            for i in 0..j {
                if let Some(p) = &self.comp[i][j] {
                    cands.push((i, p.iter().map(|&x| f.apply(x)).collect()));
                }
            }
            for (i, t) in cands {
                match &self.comp[i][k] {
                    Some(prev) if *prev != t => return false,
                    Some(_) => {}
                    None => self.comp[i][k] = Some(t),
                }
            }
        }
        true
    }

    fn partial(&self, shape: &Shape, upto: usize) -> Diagram {
        let arrows = shape
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(_, d))| d < upto)
            .map(|(e, &(s, d))| Arrow { src: s, dst: d, map: self.arrows[e].clone().expect("chosen") })
            .collect();
        Diagram { labels: shape.labels[..upto].to_vec(), nodes: self.nodes[..upto].to_vec(), arrows }
    }

    fn diagram(&self, shape: &Shape) -> Diagram {
        self.partial(shape, shape.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_shape() -> Shape {
        Shape::new(&["C", "A", "B", "M"], &[("C", "A"), ("C", "B"), ("A", "M"), ("B", "M")])
    }

    #[test]
    fn enumerated_squares_commute() {
        let cat = Category::FinSet;
        let mut count = 0;
        Enumerator::new(&cat, square_shape(), MorphismClass::Mono, 2)
            .run(|d| {
                assert!(d.commutes());
                count += 1;
                ControlFlow::Continue(())
            })
            .unwrap();
        assert!(count > 0);
    }

    #[test]
    fn orbit_reduction_keeps_one_injection_per_class() {
        // Up to automorphisms of the codomain there is one injection 1 -> 3.
        let cat = Category::FinSet;
        let shape = Shape::new(&["X", "Y"], &[("X", "Y")]);
        let mut seen = Vec::new();
        Enumerator::new(&cat, shape, MorphismClass::Mono, 3)
            .domain("X", NodeDomain::Among(vec![Obj::set(1)]))
            .domain("Y", NodeDomain::Among(vec![Obj::set(3)]))
            .run(|d| {
                seen.push(d.arrows[0].map.map().to_vec());
                ControlFlow::Continue(())
            })
            .unwrap();
        assert_eq!(seen, vec![vec![0]]);
    }

    #[test]
    fn prefix_is_respected_and_budget_truncates() {
        let cat = Category::FinSet;
        let shape = Shape::new(&["X", "Y"], &[("X", "Y")]);
        let x = Arc::new(Obj::set(2));
        let prefix = Diagram { labels: vec!["X".into()], nodes: vec![x.clone()], arrows: vec![] };
        let stats = Enumerator::new(&cat, shape, MorphismClass::All, 3)
            .prefix(prefix)
            .budget(Some(3))
            .run(|d| {
                assert_eq!(d.nodes[0], x);
                ControlFlow::Continue(())
            })
            .unwrap();
        assert!(stats.truncated);
        assert_eq!(stats.diagrams, 3);
    }
}
