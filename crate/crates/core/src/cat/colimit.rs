//! Colimits of finite diagrams, computed on the underlying carriers and then
//! equipped with the least structure making every leg a homomorphism.
//!
//! Every cocone factors through the carrier colimit, so an [`Obstruction`] found
//! there is a certificate that no cocone with the requested leg classes exists.
//! Nodes may mix kinds sharing a carrier layer; this is how completions of a
//! carrier-preserving functor are glued.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{components, Category};
use super::class::MorphismClass;
use super::diagram::Diagram;
use super::field::Field;
use super::linalg::{self, Solution};
use super::morphism::{linear_table, Morphism};
use super::object::Obj;

/// A diagram of carriers to be glued. Arrow tables must be homomorphisms of the
/// common carrier layer (functions, or linear maps for linear kinds).
#[derive(Clone, Debug, Default)]
pub struct Gluing {
    pub labels: Vec<String>,
    pub nodes: Vec<Arc<Obj>>,
    pub arrows: Vec<(usize, usize, Vec<u32>)>,
    /// Class each colimit leg is required to lie in.
    pub leg_class: Vec<MorphismClass>,
}

impl Gluing {
    pub fn new() -> Gluing {
        Gluing::default()
    }

    pub fn from_diagram(d: &Diagram, cls: MorphismClass) -> Gluing {
        Gluing {
            labels: d.labels.clone(),
            nodes: d.nodes.clone(),
            arrows: d.arrows.iter().map(|a| (a.src, a.dst, a.map.map().to_vec())).collect(),
            leg_class: vec![cls; d.nodes.len()],
        }
    }

    pub fn node(&mut self, label: impl Into<String>, obj: Arc<Obj>, cls: MorphismClass) -> usize {
        self.labels.push(label.into());
        self.nodes.push(obj);
        self.leg_class.push(cls);
        self.nodes.len() - 1
    }

    pub fn arrow(&mut self, src: usize, dst: usize, map: &[u32]) {
        self.arrows.push((src, dst, map.to_vec()));
    }
}

/// A cocone over a [`Gluing`]: apex plus one carrier table per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    pub apex: Arc<Obj>,
    pub legs: Vec<Vec<u32>>,
    /// False when unconstrained structure was filled with defaults, so the apex is a
    /// cocone but not necessarily the colimit.
    pub exact: bool,
}

impl Glued {
    pub fn leg(&self, g: &Gluing, i: usize) -> Morphism {
        Morphism::raw(g.nodes[i].clone(), self.apex.clone(), self.legs[i].clone())
    }
}

/// One entry `node(x, y) = value` of a bilinear form or binary function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub node: String,
    pub x: u32,
    pub y: u32,
    pub value: u8,
}

/// Certificate that no cocone with the requested leg classes exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// Distinct `x`, `y` of `node` are identified by every cocone.
    LegCollapse { node: String, x: u32, y: u32 },
    /// Both ends of an edge of `node` are identified by every cocone.
    Loop { node: String, u: u32, v: u32 },
    /// `u`, `v` are non-adjacent in `node` whose leg must be an embedding, yet their
    /// images carry the edge `eu`-`ev` of `edge_from`.
    EdgeDisagreement { node: String, u: u32, v: u32, edge_from: String, eu: u32, ev: u32 },
    /// The forced values of the form admit no solution.
    FormValue { equations: Vec<FormEntry> },
    /// Two forced values of a binary function at the same pair disagree.
    ValueConflict { first: FormEntry, second: FormEntry },
    /// The forced endomorphism maps an edge onto a forced non-edge, or an edge onto
    /// a single vertex.
    EndomorphismConsistency { edge_from: String, u: u32, v: u32, non_edge_in: String, su: u32, sv: u32 },
    /// Nodes from different summands of a coproduct.
    ComponentMismatch { node: String, tag: u32, other: String, other_tag: u32 },
    /// Obstruction in one factor of a product.
    InComponent { component: u8, inner: Box<Obstruction> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueError {
    Obstructed(Obstruction),
    /// The engine found no cocone but cannot certify that none exists.
    Unresolved(String),
}

type Glue<T> = std::result::Result<T, GlueError>;

fn obstructed<T>(o: Obstruction) -> Glue<T> {
    Err(GlueError::Obstructed(o))
}

/// Glue `g` into an object of `target`.
pub fn glue(target: &Category, g: &Gluing) -> Glue<Glued> {
    match target {
        Category::Product(l, r) => glue_product(l, r, g),
        Category::Coproduct(cats) => glue_coproduct(cats, g),
        Category::FinVec(q) | Category::FinBil(q) => glue_linear(target, *q, g),
        _ => glue_sets(target, g),
    }
}

/// Colimit of a diagram inside one category, with legs as morphisms.
pub fn colimit(cat: &Category, d: &Diagram, cls: MorphismClass) -> Glue<(Arc<Obj>, Vec<Morphism>)> {
    let g = Gluing::from_diagram(d, cls);
    let out = glue(cat, &g)?;
    let legs = (0..g.nodes.len()).map(|i| out.leg(&g, i)).collect();
    Ok((out.apex, legs))
}

fn glue_product(l: &Category, r: &Category, g: &Gluing) -> Glue<Glued> {
    let mut parts = [Gluing::new(), Gluing::new()];
    let mut cut = Vec::new();
    for (i, n) in g.nodes.iter().enumerate() {
        let Obj::Product(a, b) = &**n else {
            return Err(GlueError::Unresolved(format!("node {} is not a product", g.labels[i])));
        };
        cut.push(a.card() as u32);
        parts[0].node(g.labels[i].clone(), Arc::new((**a).clone()), g.leg_class[i]);
        parts[1].node(g.labels[i].clone(), Arc::new((**b).clone()), g.leg_class[i]);
    }
    for (s, t, map) in &g.arrows {
        let (ls, lt) = (cut[*s] as usize, cut[*t]);
        parts[0].arrow(*s, *t, &map[..ls]);
        parts[1].arrow(*s, *t, &map[ls..].iter().map(|&y| y - lt).collect::<Vec<_>>());
    }
    let wrap = |k: u8| move |e: GlueError| match e {
        GlueError::Obstructed(o) => GlueError::Obstructed(Obstruction::InComponent { component: k, inner: Box::new(o) }),
        other => other,
    };
    let left = glue(l, &parts[0]).map_err(wrap(0))?;
    let right = glue(r, &parts[1]).map_err(wrap(1))?;
    let off = left.apex.card() as u32;
    let legs = left
        .legs
        .iter()
        .zip(&right.legs)
        .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + off)).collect())
        .collect();
    let apex = Arc::new(Obj::product((*left.apex).clone(), (*right.apex).clone()));
    Ok(Glued { apex, legs, exact: left.exact && right.exact })
}

fn glue_coproduct(cats: &[Category], g: &Gluing) -> Glue<Glued> {
    let mut tag: Option<(usize, u32)> = None;
    let mut inner = g.clone();
    for (i, n) in g.nodes.iter().enumerate() {
        if let Obj::Tagged(t, o) = &**n {
            match tag {
                Some((j, s)) if s != *t => {
                    return obstructed(Obstruction::ComponentMismatch {
                        node: g.labels[j].clone(),
                        tag: s,
                        other: g.labels[i].clone(),
                        other_tag: *t,
                    })
                }
                None => tag = Some((i, *t)),
                _ => {}
            }
            inner.nodes[i] = Arc::new((**o).clone());
        }
    }
    let t = tag.map_or(0, |(_, t)| t);
    let cat = cats
        .get(t as usize)
        .ok_or_else(|| GlueError::Unresolved(format!("no summand with tag {t}")))?;
    let out = glue(cat, &inner)?;
    Ok(Glued { apex: Arc::new(Obj::tagged(t, (*out.apex).clone())), ..out })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
        true
    }
}

fn glue_sets(target: &Category, g: &Gluing) -> Glue<Glued> {
    let offs: Vec<usize> = g.nodes.iter().scan(0, |acc, n| {
        let o = *acc;
        *acc += n.card();
        Some(o)
    }).collect();
    let total: usize = g.nodes.iter().map(|n| n.card()).sum();
    let mut uf = UnionFind((0..total).collect());
    for (s, t, map) in &g.arrows {
        for (x, &y) in map.iter().enumerate() {
            uf.union(offs[*s] + x, offs[*t] + y as usize);
        }
    }
    // Congruence closure: forced endomorphism values must agree.
    let sigma_nodes: Vec<usize> = (0..g.nodes.len()).filter(|&i| g.nodes[i].endo().is_some()).collect();
    loop {
        let mut image: BTreeMap<usize, usize> = BTreeMap::new();
        let mut merged = false;
        for &i in &sigma_nodes {
            for (x, &sx) in g.nodes[i].endo().unwrap().iter().enumerate() {
                let (p, s) = (uf.find(offs[i] + x), uf.find(offs[i] + sx as usize));
                match image.get(&p) {
                    Some(&prev) if uf.find(prev) != s => merged |= uf.union(prev, s),
                    Some(_) => {}
                    None => {
                        image.insert(p, s);
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut count = 0usize;
    for e in 0..total {
        let r = uf.find(e);
        if class_of[r] == usize::MAX {
            class_of[r] = count;
            count += 1;
        }
        class_of[e] = class_of[r];
    }
    let legs: Vec<Vec<u32>> = g
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (0..n.card()).map(|x| class_of[offs[i] + x] as u32).collect())
        .collect();
    check_collapse(g, &legs)?;

    // Edges with the node that forces them.
    let mut edges: BTreeMap<(u32, u32), (usize, u32, u32)> = BTreeMap::new();
    for (i, n) in g.nodes.iter().enumerate() {
        for &(u, v) in n.edges().unwrap_or(&[]) {
            let (a, b) = (legs[i][u as usize], legs[i][v as usize]);
            if a == b {
                return obstructed(Obstruction::Loop { node: g.labels[i].clone(), u, v });
            }
            edges.entry((a.min(b), a.max(b))).or_insert((i, u, v));
        }
    }
    let wants_graph = matches!(target, Category::FinGraph | Category::ConnGraph | Category::SigmaGraph);
    let wants_sigma = matches!(target, Category::SigmaSet | Category::SigmaGraph);
    let mut exact = true;

    let sigma = if wants_sigma {
        let mut sigma: Vec<Option<u32>> = vec![None; count];
        for &i in &sigma_nodes {
            for (x, &sx) in g.nodes[i].endo().unwrap().iter().enumerate() {
                sigma[legs[i][x] as usize] = Some(legs[i][sx as usize]);
            }
        }
        if sigma.iter().any(Option::is_none) {
            exact = false;
        }
        let forced: Vec<bool> = sigma.iter().map(Option::is_some).collect();
        let sigma: Vec<u32> = sigma.iter().enumerate().map(|(p, s)| s.unwrap_or(p as u32)).collect();
        if wants_graph {
            close_edges_under(g, &legs, &sigma, &forced, &mut edges)?;
        }
        Some(sigma)
    } else {
        None
    };
    if wants_graph {
        check_reflection(g, &legs, &edges)?;
    }

    let edge_list: Vec<(u32, u32)> = edges.keys().copied().collect();
    let apex = match target {
        Category::FinSet => Obj::set(count as u32),
        Category::FinGraph => Obj::graph(count as u32, &edge_list),
        Category::ConnGraph => {
            let (n, e, hub) = connect(count as u32, edge_list);
            exact &= !hub;
            Obj::graph(n, &e)
        }
        Category::SigmaSet => Obj::sigma_set(sigma.unwrap()),
        Category::SigmaGraph => Obj::sigma_graph(&edge_list, sigma.unwrap()),
        Category::FinBinFunc(q) => {
            let (table, full) = impose_table(g, &legs, count)?;
            exact &= full;
            Obj::binfunc(*q, count as u32, table)
        }
        other => return Err(GlueError::Unresolved(format!("no carrier gluing into {}", other.name()))),
    };
    Ok(Glued { apex: Arc::new(apex), legs, exact })
}

fn check_collapse(g: &Gluing, legs: &[Vec<u32>]) -> Glue<()> {
    for (i, leg) in legs.iter().enumerate() {
        if !g.leg_class[i].injective() {
            continue;
        }
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        for (x, &p) in leg.iter().enumerate() {
            if let Some(&y) = seen.get(&p) {
                return obstructed(Obstruction::LegCollapse { node: g.labels[i].clone(), x: y, y: x as u32 });
            }
            seen.insert(p, x as u32);
        }
    }
    Ok(())
}

/// Add the edges forced by the endomorphism until closed. Violations are certified
/// only when they follow from forced values and a forced non-edge.
fn close_edges_under(
    g: &Gluing,
    legs: &[Vec<u32>],
    sigma: &[u32],
    forced: &[bool],
    edges: &mut BTreeMap<(u32, u32), (usize, u32, u32)>,
) -> Glue<()> {
    let non_edge_in = |a: u32, b: u32| -> Option<(usize, u32, u32)> {
        (0..g.nodes.len()).filter(|&i| g.leg_class[i] == MorphismClass::Emb || g.leg_class[i] == MorphismClass::Iso).find_map(|i| {
            let x = legs[i].iter().position(|&p| p == a)? as u32;
            let y = legs[i].iter().position(|&p| p == b)? as u32;
            (!g.nodes[i].has_edge(x, y)).then_some((i, x, y))
        })
    };
    let mut is_forced: BTreeSet<(u32, u32)> = edges.keys().copied().collect();
    let mut queue: Vec<(u32, u32)> = edges.keys().copied().collect();
    while let Some((a, b)) = queue.pop() {
        let (sa, sb) = (sigma[a as usize], sigma[b as usize]);
        let key = (sa.min(sb), sa.max(sb));
        if edges.contains_key(&key) {
            continue;
        }
        let chain_forced = is_forced.contains(&(a, b)) && forced[a as usize] && forced[b as usize];
        let blocked = if sa == sb { Some((usize::MAX, sa, sb)) } else { non_edge_in(sa, sb) };
        if let Some((j, x, y)) = blocked {
            if !chain_forced {
                return Err(GlueError::Unresolved("default endomorphism extension breaks an edge".into()));
            }
            let (src, u, v) = edges[&(a, b)];
            let (eu, ev) = (u, v);
            return obstructed(Obstruction::EndomorphismConsistency {
                edge_from: g.labels[src].clone(),
                u: eu,
                v: ev,
                non_edge_in: if j == usize::MAX { "apex".into() } else { g.labels[j].clone() },
                su: x,
                sv: y,
            });
        }
        let (src, u, v) = edges[&(a, b)];
        edges.insert(key, (src, u, v));
        if chain_forced {
            is_forced.insert(key);
        }
        queue.push(key);
    }
    Ok(())
}

fn check_reflection(g: &Gluing, legs: &[Vec<u32>], edges: &BTreeMap<(u32, u32), (usize, u32, u32)>) -> Glue<()> {
    for (i, n) in g.nodes.iter().enumerate() {
        if !matches!(g.leg_class[i], MorphismClass::Emb | MorphismClass::Iso) || n.edges().is_none() {
            continue;
        }
        let c = n.card() as u32;
        for u in 0..c {
            for v in u + 1..c {
                let (a, b) = (legs[i][u as usize], legs[i][v as usize]);
                if n.has_edge(u, v) {
                    continue;
                }
                if let Some(&(j, eu, ev)) = edges.get(&(a.min(b), a.max(b))) {
                    return obstructed(Obstruction::EdgeDisagreement {
                        node: g.labels[i].clone(),
                        u,
                        v,
                        edge_from: g.labels[j].clone(),
                        eu,
                        ev,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Make a graph connected and nonempty by adding one hub adjacent to the least
/// vertex of every component. Returns whether a hub was added.
fn connect(n: u32, mut edges: Vec<(u32, u32)>) -> (u32, Vec<(u32, u32)>, bool) {
    let comps = components(n, &edges);
    if comps.len() == 1 {
        return (n, edges, false);
    }
    for c in &comps {
        edges.push((c[0], n));
    }
    (n + 1, edges, true)
}

fn impose_table(g: &Gluing, legs: &[Vec<u32>], count: usize) -> Glue<(Vec<u8>, bool)> {
    let mut table: Vec<Option<(u8, FormEntry)>> = vec![None; count * count];
    for (i, n) in g.nodes.iter().enumerate() {
        let Obj::BinFunc { n: m, .. } = &**n else { continue };
        for x in 0..*m {
            for y in 0..*m {
                let value = n.form(x, y);
                let cell = legs[i][x as usize] as usize * count + legs[i][y as usize] as usize;
                let entry = FormEntry { node: g.labels[i].clone(), x, y, value };
                match &table[cell] {
                    Some((v, first)) if *v != value => {
                        return obstructed(Obstruction::ValueConflict { first: first.clone(), second: entry })
                    }
                    Some(_) => {}
                    None => table[cell] = Some((value, entry)),
                }
            }
        }
    }
    let full = table.iter().all(Option::is_some);
    Ok((table.into_iter().map(|c| c.map_or(0, |(v, _)| v)).collect(), full))
}

fn glue_linear(target: &Category, q: u8, g: &Gluing) -> Glue<Glued> {
    let f = Field::get(q).map_err(|e| GlueError::Unresolved(e.to_string()))?;
    let dims: Vec<usize> = g
        .nodes
        .iter()
        .map(|n| n.dim().filter(|_| n.field().is_some_and(|h| h.order() == q)))
        .collect::<Option<_>>()
        .ok_or_else(|| GlueError::Unresolved(format!("nodes must be linear over GF({q})")))?;
    let offs: Vec<usize> = dims.iter().scan(0, |acc, d| {
        let o = *acc;
        *acc += d;
        Some(o)
    }).collect();
    let total: usize = dims.iter().sum();
    let unit = |slot: usize| {
        let mut v = vec![0u8; total];
        v[slot] = 1;
        v
    };
    let mut rels = Vec::new();
    for (s, t, map) in &g.arrows {
        for k in 0..dims[*s] {
            let image = f.decode(map[g.nodes[*s].basis_element(k) as usize], dims[*t]);
            let mut row = unit(offs[*s] + k);
            for (j, &c) in image.iter().enumerate() {
                row[offs[*t] + j] = f.sub(row[offs[*t] + j], c);
            }
            rels.push(row);
        }
    }
    let (red, pivots) = linalg::rref(f, &rels, total);
    let free: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
    let project = |mut v: Vec<u8>| -> Vec<u8> {
        for (row, &p) in red.iter().zip(&pivots) {
            let k = v[p];
            if k != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(k, r));
                }
            }
        }
        free.iter().map(|&c| v[c]).collect()
    };
    let dim = free.len();
    let columns: Vec<Vec<Vec<u8>>> =
        (0..g.nodes.len()).map(|i| (0..dims[i]).map(|k| project(unit(offs[i] + k))).collect()).collect();
    for (i, cols) in columns.iter().enumerate() {
        if g.leg_class[i].injective() {
            let rows: Vec<Vec<u8>> = (0..dim).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
            if let Some(k) = linalg::kernel(f, &rows, dims[i]).first() {
                return obstructed(Obstruction::LegCollapse { node: g.labels[i].clone(), x: f.encode(k), y: 0 });
            }
        }
    }
    let legs: Vec<Vec<u32>> = columns.iter().zip(&dims).map(|(c, &d)| linear_table(f, c, d, dim)).collect();
    let (apex, exact) = match target {
        Category::FinVec(_) => (Obj::vec(q, dim as u8), true),
        _ => {
            let (gram, exact) = impose_form(f, g, &columns, dim)?;
            (Obj::bil(q, dim as u8, gram), exact)
        }
    };
    Ok(Glued { apex: Arc::new(apex), legs, exact })
}

fn impose_form(f: &Field, g: &Gluing, columns: &[Vec<Vec<u8>>], dim: usize) -> Glue<(Vec<u8>, bool)> {
    let mut eqs = Vec::new();
    let mut entries = Vec::new();
    for (i, n) in g.nodes.iter().enumerate() {
        let Obj::Bil { dim: d, gram, .. } = &**n else { continue };
        let d = *d as usize;
        for a in 0..d {
            for b in 0..d {
                let mut coef = vec![0u8; dim * dim];
                for r in 0..dim {
                    for s in 0..dim {
                        coef[r * dim + s] = f.mul(columns[i][a][r], columns[i][b][s]);
                    }
                }
                eqs.push((coef, gram[a * d + b]));
                entries.push(FormEntry {
                    node: g.labels[i].clone(),
                    x: n.basis_element(a),
                    y: n.basis_element(b),
                    value: gram[a * d + b],
                });
            }
        }
    }
    let rank = linalg::rank(f, &eqs.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>(), dim * dim);
    match linalg::solve(f, &eqs, dim * dim) {
        Solution::Unique(x) => Ok((x, rank == dim * dim)),
        Solution::Inconsistent(rows) => {
            obstructed(Obstruction::FormValue { equations: rows.into_iter().map(|r| entries[r].clone()).collect() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(o: Obj) -> Arc<Obj> {
        Arc::new(o)
    }

    fn span_gluing(c: Obj, a: Obj, b: Obj, ca: &[u32], cb: &[u32], cls: MorphismClass) -> Gluing {
        let mut g = Gluing::new();
        let (ci, ai, bi) = (g.node("C", arc(c), cls), g.node("A", arc(a), cls), g.node("B", arc(b), cls));
        g.arrow(ci, ai, ca);
        g.arrow(ci, bi, cb);
        g
    }

    #[test]
    fn set_pushout_over_a_point() {
        let g = span_gluing(Obj::set(1), Obj::set(2), Obj::set(2), &[0], &[1], MorphismClass::Mono);
        let out = glue(&Category::FinSet, &g).unwrap();
        assert_eq!(*out.apex, Obj::set(3));
        assert_eq!(out.legs[1][0], out.legs[2][1]);
        assert!(out.exact);
    }

    #[test]
    fn graph_pushout_can_disagree_on_edges() {
        // B adds an edge between the two points of C; A keeps them apart.
        let g = span_gluing(Obj::graph(2, &[]), Obj::graph(2, &[]), Obj::graph(2, &[(0, 1)]), &[0, 1], &[0, 1], MorphismClass::Emb);
        match glue(&Category::FinGraph, &g) {
            Err(GlueError::Obstructed(Obstruction::EdgeDisagreement { .. })) => {}
            other => panic!("{other:?}"),
        }
        let g = span_gluing(Obj::set(2), Obj::set(1), Obj::set(2), &[0, 0], &[0, 1], MorphismClass::All);
        assert_eq!(*glue(&Category::FinSet, &g).unwrap().apex, Obj::set(1));
    }

    #[test]
    fn loops_are_forced_failures() {
        let g = span_gluing(Obj::graph(2, &[(0, 1)]), Obj::graph(1, &[]), Obj::graph(2, &[(0, 1)]), &[0, 0], &[0, 1], MorphismClass::All);
        assert!(matches!(glue(&Category::FinGraph, &g), Err(GlueError::Obstructed(Obstruction::Loop { .. }))));
    }

    #[test]
    fn vector_pushout_of_two_planes_over_a_line() {
        let g = span_gluing(Obj::vec(2, 1), Obj::vec(2, 2), Obj::vec(2, 2), &[0, 1], &[0, 1], MorphismClass::Mono);
        let out = glue(&Category::FinVec(2), &g).unwrap();
        assert_eq!(out.apex.dim(), Some(3));
        for i in 0..3 {
            let m = out.leg(&g, i);
            assert!(Morphism::new(m.dom().clone(), m.cod().clone(), m.map().to_vec()).is_ok());
            assert!(m.is_injective());
        }
    }

    #[test]
    fn conflicting_forms_are_certified() {
        // The common line is isotropic in A but not in B.
        let g = span_gluing(Obj::vec(2, 1), Obj::bil(2, 1, vec![0]), Obj::bil(2, 1, vec![1]), &[0, 1], &[0, 1], MorphismClass::Mono);
        match glue(&Category::FinBil(2), &g) {
            Err(GlueError::Obstructed(Obstruction::FormValue { equations })) => assert_eq!(equations.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn forms_glue_when_compatible() {
        let g = span_gluing(Obj::bil(2, 0, vec![]), Obj::bil(2, 1, vec![1]), Obj::bil(2, 1, vec![0]), &[0], &[0], MorphismClass::Mono);
        let out = glue(&Category::FinBil(2), &g).unwrap();
        assert_eq!(out.apex.dim(), Some(2));
        assert!(!out.exact);
        for i in 0..3 {
            let m = out.leg(&g, i);
            assert!(Morphism::new(m.dom().clone(), m.cod().clone(), m.map().to_vec()).is_ok());
        }
    }

    #[test]
    fn sigma_congruence_merges_forced_images() {
        let swap = || Obj::sigma_set(vec![1, 0]);
        let g = span_gluing(swap(), swap(), swap(), &[0, 1], &[1, 0], MorphismClass::Mono);
        assert_eq!(glue(&Category::SigmaSet, &g).unwrap().apex.card(), 2);
        // Collapsing the swapped pair in B forces it collapsed in A.
        let g = span_gluing(swap(), swap(), Obj::sigma_set(vec![0]), &[0, 1], &[0, 0], MorphismClass::All);
        assert_eq!(glue(&Category::SigmaSet, &g).unwrap().apex.card(), 1);
        let g = Gluing { leg_class: vec![MorphismClass::All, MorphismClass::Mono, MorphismClass::All], ..g };
        match glue(&Category::SigmaSet, &g) {
            Err(GlueError::Obstructed(Obstruction::LegCollapse { node, .. })) => assert_eq!(node, "A"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coproduct_nodes_must_share_a_summand() {
        let cat = Category::Coproduct(vec![Category::FinSet, Category::FinSet]);
        let mut g = Gluing::new();
        g.node("A", arc(Obj::tagged(0, Obj::set(1))), MorphismClass::Mono);
        g.node("B", arc(Obj::tagged(1, Obj::set(1))), MorphismClass::Mono);
        assert!(matches!(glue(&cat, &g), Err(GlueError::Obstructed(Obstruction::ComponentMismatch { .. }))));
    }

    #[test]
    fn connected_gluing_adds_a_hub_only_when_needed() {
        let mut g = Gluing::new();
        g.node("A", arc(Obj::graph(1, &[])), MorphismClass::Emb);
        g.node("B", arc(Obj::graph(1, &[])), MorphismClass::Emb);
        let out = glue(&Category::ConnGraph, &g).unwrap();
        assert_eq!(*out.apex, Obj::graph(3, &[(0, 2), (1, 2)]));
        assert!(!out.exact);
    }

    #[test]
    fn certificates_serialise_with_kind_tags() {
        let o = Obstruction::EdgeDisagreement { node: "A".into(), u: 0, v: 1, edge_from: "B".into(), eu: 0, ev: 1 };
        let s = serde_json::to_string(&o).unwrap();
        assert!(s.starts_with(r#"{"kind":"edge-disagreement""#));
        assert_eq!(serde_json::from_str::<Obstruction>(&s).unwrap(), o);
    }
}
