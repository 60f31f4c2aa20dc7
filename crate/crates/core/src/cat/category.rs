//! Enumerable finite concrete categories.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::class::MorphismClass;
use super::field::Field;
use super::linalg;
use super::morphism::{linear_table, Morphism};
use super::object::{congruent, general_linear_group, normalize_edges, Obj};
use crate::{Error, Result};

/// Upper bound on `raw candidates × relabelings` spent by object enumeration.
const OBJECT_WORK_CAP: u64 = 60_000_000;

/// Default cap on the size of a single hom-set.
pub const DEFAULT_HOM_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    FinSet,
    FinGraph,
    FinVec(u8),
    FinBil(u8),
    FinBinFunc(u8),
    SigmaSet,
    SigmaGraph,
    /// Full subcategory of nonempty connected graphs.
    ConnGraph,
    Product(Box<Category>, Box<Category>),
    /// Disjoint union of categories; objects are tagged with their summand index.
    Coproduct(Vec<Category>),
}

/// Optional exact constructions a category provides.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Capabilities {
    pub pullback: bool,
    pub multipushout: bool,
    pub factorization: bool,
    pub canonical_amalgam: bool,
    pub amalgamation_decider: bool,
    pub join_decider: bool,
}

impl Category {
    pub fn name(&self) -> String {
        match self {
            Category::FinSet => "fin-set".into(),
            Category::FinGraph => "fin-graph".into(),
            Category::FinVec(q) => format!("fin-vec-{q}"),
            Category::FinBil(q) => format!("fin-bil-{q}"),
            Category::FinBinFunc(q) => format!("fin-binfunc-{q}"),
            Category::SigmaSet => "sigma-set".into(),
            Category::SigmaGraph => "sigma-graph".into(),
            Category::ConnGraph => "conn-graph".into(),
            Category::Product(l, r) => format!("{}*{}", l.name(), r.name()),
            Category::Coproduct(cs) => format!("coprod({})", cs.iter().map(Category::name).join(",")),
        }
    }

    pub fn capabilities(&self) -> Capabilities {
        match self {
            Category::ConnGraph | Category::Coproduct(_) => Capabilities {
                pullback: false,
                multipushout: true,
                factorization: true,
                canonical_amalgam: true,
                amalgamation_decider: true,
                join_decider: true,
            },
            Category::FinBil(_) | Category::FinBinFunc(_) => Capabilities {
                pullback: false,
                multipushout: false,
                factorization: true,
                canonical_amalgam: true,
                amalgamation_decider: true,
                join_decider: true,
            },
            Category::Product(l, r) => {
                let (a, b) = (l.capabilities(), r.capabilities());
                Capabilities {
                    pullback: a.pullback && b.pullback,
                    multipushout: a.multipushout && b.multipushout,
                    factorization: a.factorization && b.factorization,
                    canonical_amalgam: a.canonical_amalgam && b.canonical_amalgam,
                    amalgamation_decider: a.amalgamation_decider && b.amalgamation_decider,
                    join_decider: a.join_decider && b.join_decider,
                }
            }
            _ => Capabilities {
                pullback: true,
                multipushout: true,
                factorization: true,
                canonical_amalgam: true,
                amalgamation_decider: true,
                join_decider: true,
            },
        }
    }

    /// Whether `obj` is an object of this category.
    pub fn contains(&self, obj: &Obj) -> bool {
        if obj.validate().is_err() {
            return false;
        }
        match (self, obj) {
            (Category::FinSet, Obj::Set { .. })
            | (Category::FinGraph, Obj::Graph { .. })
            | (Category::SigmaSet, Obj::SigmaSet { .. })
            | (Category::SigmaGraph, Obj::SigmaGraph { .. }) => true,
            (Category::FinVec(q), Obj::Vec { q: p, .. })
            | (Category::FinBil(q), Obj::Bil { q: p, .. })
            | (Category::FinBinFunc(q), Obj::BinFunc { q: p, .. }) => p == q,
            (Category::ConnGraph, Obj::Graph { n, edges }) => *n > 0 && is_connected(*n, edges),
            (Category::Product(l, r), Obj::Product(a, b)) => l.contains(a) && r.contains(b),
            (Category::Coproduct(cs), Obj::Tagged(t, inner)) => cs.get(*t as usize).is_some_and(|c| c.contains(inner)),
            _ => false,
        }
    }

    pub fn check_object(&self, obj: &Obj) -> Result<()> {
        if self.contains(obj) {
            Ok(())
        } else {
            Err(Error::Kind(format!("{} object is not in {}", obj.kind_tag(), self.name())))
        }
    }

    /// All objects of size at most `max_size`, one per isomorphism class, ordered by
    /// size and then by canonical form.
    pub fn objects(&self, max_size: usize) -> Result<Vec<Obj>> {
        let mut out = Vec::new();
        for n in 0..=max_size {
            out.extend(self.objects_of_size(n)?);
        }
        Ok(out)
    }

    /// Objects of size exactly `n`, up to isomorphism, in canonical order.
    pub fn objects_of_size(&self, n: usize) -> Result<Vec<Obj>> {
        let nu = n as u32;
        let res = match self {
            Category::FinSet => vec![Obj::set(nu)],
            Category::FinVec(q) => {
                Field::get(*q)?;
                vec![Obj::vec(*q, n as u8)]
            }
            Category::FinGraph => graphs_of_order(n, false)?,
            Category::ConnGraph => {
                if n == 0 {
                    Vec::new()
                } else {
                    graphs_of_order(n, true)?
                }
            }
            Category::FinBil(q) => {
                let f = Field::get(*q)?;
                let total = (*q as u64).pow((n * n) as u32);
                let gl = general_linear_group(f, n);
                charge(total * gl.len() as u64, "bilinear forms")?;
                let mut seen = BTreeSet::new();
                for idx in 0..total {
                    let gram = digits(idx, *q as u64, n * n);
                    let best = gl.iter().map(|p| congruent(f, &gram, p, n)).min().unwrap_or(gram);
                    seen.insert(best);
                }
                seen.into_iter().map(|g| Obj::bil(*q, n as u8, g)).collect()
            }
            Category::FinBinFunc(q) => {
                Field::get(*q)?;
                let total = (*q as u64).pow((n * n) as u32);
                charge(total * factorial(n), "binary functions")?;
                let mut seen = BTreeSet::new();
                for idx in 0..total {
                    seen.insert(Obj::binfunc(*q, nu, digits(idx, *q as u64, n * n)).canonical());
                }
                seen.into_iter().collect()
            }
            Category::SigmaSet => {
                let total = (n as u64).pow(n as u32);
                charge(total * factorial(n), "endomorphisms")?;
                let mut seen = BTreeSet::new();
                for idx in 0..total {
                    let endo = digits(idx, n as u64, n).into_iter().map(u32::from).collect();
                    seen.insert(Obj::sigma_set(endo).canonical());
                }
                seen.into_iter().collect()
            }
            Category::SigmaGraph => {
                let pairs: Vec<(u32, u32)> = (0..nu).tuple_combinations().collect();
                let total = (1u64 << pairs.len()) * (n as u64).pow(n as u32);
                charge(total * factorial(n), "graphs with endomorphism")?;
                let mut seen = BTreeSet::new();
                for mask in 0..1u64 << pairs.len() {
                    let edges: Vec<(u32, u32)> =
                        pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                    let g = Obj::graph(nu, &edges);
                    for idx in 0..(n as u64).pow(n as u32) {
                        let endo: Vec<u32> = digits(idx, n as u64, n).into_iter().map(u32::from).collect();
                        let ok = edges.iter().all(|&(u, v)| {
                            let (a, b) = (endo[u as usize], endo[v as usize]);
                            a != b && g.has_edge(a, b)
                        });
                        if ok {
                            seen.insert(Obj::sigma_graph(&edges, endo).canonical());
                        }
                    }
                }
                seen.into_iter().collect()
            }
            Category::Product(l, r) => {
                let mut out = Vec::new();
                let (ls, rs) = (l.objects(n)?, r.objects(n)?);
                for a in &ls {
                    for b in &rs {
                        if a.size().max(b.size()) == n {
                            out.push(Obj::product(a.clone(), b.clone()));
                        }
                    }
                }
                out.sort();
                out
            }
            Category::Coproduct(cs) => {
                let mut out = Vec::new();
                for (t, c) in cs.iter().enumerate() {
                    out.extend(c.objects_of_size(n)?.into_iter().map(|o| Obj::tagged(t as u32, o)));
                }
                out
            }
        };
        Ok(res)
    }

    /// All morphisms `a -> b` in `cls`, in deterministic (lexicographic) order.
    pub fn hom(&self, a: &Arc<Obj>, b: &Arc<Obj>, cls: MorphismClass, cap: usize) -> Result<Vec<Morphism>> {
        self.hom_constrained(a, b, cls, &[], cap)
    }

    /// Morphisms `a -> b` in `cls` with `map[x] = y` for every constraint `(x, y)`.
    pub fn hom_constrained(
        &self,
        a: &Arc<Obj>,
        b: &Arc<Obj>,
        cls: MorphismClass,
        constraints: &[(u32, u32)],
        cap: usize,
    ) -> Result<Vec<Morphism>> {
        if !a.same_kind(b) {
            return Err(Error::Kind(format!("hom between {} and {}", a.kind_tag(), b.kind_tag())));
        }
        let mut fixed = vec![None; a.card()];
        for &(x, y) in constraints {
            match fixed[x as usize] {
                Some(z) if z != y => return Ok(Vec::new()),
                _ => fixed[x as usize] = Some(y),
            }
        }
        let mut out = Vec::new();
        search(a, b, cls, &fixed, cap, &mut |m| out.push(Morphism::raw(a.clone(), b.clone(), m)))?;
        Ok(out)
    }

    pub fn automorphisms(&self, a: &Arc<Obj>) -> Result<Vec<Morphism>> {
        self.hom(a, a, MorphismClass::Iso, DEFAULT_HOM_CAP)
    }

    pub fn isomorphic(&self, a: &Arc<Obj>, b: &Arc<Obj>) -> bool {
        a.card() == b.card()
            && a.same_kind(b)
            && self.hom(a, b, MorphismClass::Iso, DEFAULT_HOM_CAP).map(|h| !h.is_empty()).unwrap_or(false)
    }

    /// Brute-force monomorphism test: `f` is left-cancellable against every parallel
    /// pair out of every object of size at most `max_size`.
    pub fn is_mono_bruteforce(&self, f: &Morphism, max_size: usize) -> Result<bool> {
        for x in self.objects(max_size)? {
            let x = Arc::new(x);
            let homs = self.hom(&x, f.dom(), MorphismClass::All, DEFAULT_HOM_CAP)?;
            let composites: Vec<Morphism> =
                homs.iter().map(|g| Morphism::compose(f, g)).collect::<Result<_>>()?;
            if composites.iter().all_unique() {
                continue;
            }
            return Ok(false);
        }
        Ok(true)
    }
}

fn charge(work: u64, what: &str) -> Result<()> {
    if work > OBJECT_WORK_CAP {
        Err(Error::ScopeExceeded(format!("enumerating {what} needs {work} steps")))
    } else {
        Ok(())
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn digits(mut idx: u64, base: u64, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % base.max(1)) as u8);
        idx /= base.max(1);
    }
    out
}

pub(crate) fn is_connected(n: u32, edges: &[(u32, u32)]) -> bool {
    components(n, edges).len() <= 1
}

/// Connected components as sorted vertex lists, ordered by least vertex.
pub fn components(n: u32, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut parent: Vec<u32> = (0..n).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        p[x as usize] = r;
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
    let mut groups: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}

fn graphs_of_order(n: usize, connected: bool) -> Result<Vec<Obj>> {
    let nu = n as u32;
    let pairs: Vec<(u32, u32)> = (0..nu).tuple_combinations().collect();
    charge((1u64 << pairs.len()) * factorial(n), "graphs")?;
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut seen = BTreeSet::new();
    for mask in 0..1u64 << pairs.len() {
        let edges: Vec<(u32, u32)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        if connected && !is_connected(nu, &edges) {
            continue;
        }
        let best = perms
            .iter()
            .map(|p| normalize_edges(&edges.iter().map(|&(u, v)| (p[u as usize] as u32, p[v as usize] as u32)).collect_vec()))
            .min()
            .unwrap_or_default();
        seen.insert(best);
    }
    Ok(seen.into_iter().map(|e| Obj::Graph { n: nu, edges: e }).collect())
}

/// Backtracking hom-set search; `emit` receives every complete table.
fn search(
    a: &Obj,
    b: &Obj,
    cls: MorphismClass,
    fixed: &[Option<u32>],
    cap: usize,
    emit: &mut dyn FnMut(Vec<u32>),
) -> Result<()> {
    match (a, b) {
        (Obj::Product(al, ar), Obj::Product(bl, br)) => {
            let (n, off) = (al.card(), bl.card() as u32);
            if fixed[..n].iter().flatten().any(|&y| y >= off) || fixed[n..].iter().flatten().any(|&y| y < off) {
                return Ok(());
            }
            let right_fixed: Vec<Option<u32>> = fixed[n..].iter().map(|y| y.map(|y| y - off)).collect();
            let mut lefts = Vec::new();
            search(al, bl, cls, &fixed[..n], cap, &mut |m| lefts.push(m))?;
            if lefts.is_empty() {
                return Ok(());
            }
            let mut rights = Vec::new();
            search(ar, br, cls, &right_fixed, cap, &mut |m| rights.push(m))?;
            if lefts.len().saturating_mul(rights.len()) > cap {
                return Err(hom_cap_error(a, b, cap));
            }
            for l in &lefts {
                for r in &rights {
                    emit(l.iter().copied().chain(r.iter().map(|&y| y + off)).collect());
                }
            }
            Ok(())
        }
        (Obj::Tagged(s, ai), Obj::Tagged(t, bi)) => {
            if s == t {
                search(ai, bi, cls, fixed, cap, emit)
            } else {
                Ok(())
            }
        }
        (Obj::Vec { .. }, _) | (Obj::Bil { .. }, _) => linear_search(a, b, cls, fixed, cap, emit),
        _ => TableSearch::new(a, b, cls, fixed, cap).run(emit),
    }
}

fn hom_cap_error(a: &Obj, b: &Obj, cap: usize) -> Error {
    Error::ScopeExceeded(format!("hom-set {} -> {} exceeds {cap} morphisms", a.kind_tag(), b.kind_tag()))
}

fn linear_search(
    a: &Obj,
    b: &Obj,
    cls: MorphismClass,
    fixed: &[Option<u32>],
    cap: usize,
    emit: &mut dyn FnMut(Vec<u32>),
) -> Result<()> {
    let f = a.field().ok_or_else(|| Error::Kind("linear search on non-linear object".into()))?;
    let (d, c) = (a.dim().unwrap_or(0), b.dim().unwrap_or(0));
    let vectors: Vec<Vec<u8>> = (0..f.space_size(c) as u32).map(|i| f.decode(i, c)).collect();
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(d);
    let mut count = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &Field,
        a: &Obj,
        b: &Obj,
        cls: MorphismClass,
        fixed: &[Option<u32>],
        vectors: &[Vec<u8>],
        cols: &mut Vec<Vec<u8>>,
        d: usize,
        c: usize,
        cap: usize,
        count: &mut usize,
        emit: &mut dyn FnMut(Vec<u32>),
    ) -> Result<()> {
        let i = cols.len();
        if i == d {
            let table = linear_table(f, cols, d, c);
            if fixed.iter().enumerate().any(|(x, y)| y.is_some_and(|y| table[x] != y)) {
                return Ok(());
            }
            if matches!(cls, MorphismClass::Surj | MorphismClass::Iso) && linalg::rank(f, cols, c) != c {
                return Ok(());
            }
            *count += 1;
            if *count > cap {
                return Err(hom_cap_error(a, b, cap));
            }
            emit(table);
            return Ok(());
        }
        let basis = a.basis_element(i) as usize;
        for v in vectors {
            if fixed[basis].is_some_and(|y| f.encode(v) != y) {
                continue;
            }
            cols.push(v.clone());
            let mut ok = !cls.injective() || linalg::rank(f, cols, c) == cols.len();
            if ok && matches!(a, Obj::Bil { .. }) {
                for j in 0..=i {
                    let (xi, xj) = (a.basis_element(i), a.basis_element(j));
                    let (yi, yj) = (f.encode(&cols[i]), f.encode(&cols[j]));
                    ok &= b.form(yi, yj) == a.form(xi, xj) && b.form(yj, yi) == a.form(xj, xi);
                }
            }
            if ok {
                rec(f, a, b, cls, fixed, vectors, cols, d, c, cap, count, emit)?;
            }
            cols.pop();
        }
        Ok(())
    }
    rec(f, a, b, cls, fixed, &vectors, &mut cols, d, c, cap, &mut count, emit)
}

/// Backtracking over carrier elements for the table-based kinds.
struct TableSearch<'a> {
    a: &'a Obj,
    b: &'a Obj,
    cls: MorphismClass,
    fixed: &'a [Option<u32>],
    cap: usize,
    adj_a: Vec<u64>,
    adj_b: Vec<u64>,
    graph: bool,
    count: usize,
}

impl<'a> TableSearch<'a> {
    fn new(a: &'a Obj, b: &'a Obj, cls: MorphismClass, fixed: &'a [Option<u32>], cap: usize) -> Self {
        let graph = a.edges().is_some();
        let (adj_a, adj_b) = if graph { (a.adjacency(), b.adjacency()) } else { (Vec::new(), Vec::new()) };
        TableSearch { a, b, cls, fixed, cap, adj_a, adj_b, graph, count: 0 }
    }

    fn run(mut self, emit: &mut dyn FnMut(Vec<u32>)) -> Result<()> {
        let (n, m) = (self.a.card(), self.b.card());
        if self.cls.injective() && n > m {
            return Ok(());
        }
        if matches!(self.cls, MorphismClass::Surj | MorphismClass::Iso) && m > n {
            return Ok(());
        }
        if self.cls == MorphismClass::Iso && n != m {
            return Ok(());
        }
        let mut map = Vec::with_capacity(n);
        let mut used = vec![false; m];
        self.rec(&mut map, &mut used, emit)
    }

    fn consistent(&self, map: &[u32], x: usize, y: u32) -> bool {
        let emb = matches!(self.cls, MorphismClass::Emb | MorphismClass::Iso);
        if self.graph {
            for (u, &mu) in map.iter().enumerate() {
                let adj = self.adj_a[x] >> u & 1 == 1;
                let adj_img = self.adj_b[mu as usize] >> y & 1 == 1;
                if adj && !adj_img {
                    return false;
                }
                if emb && !adj && adj_img {
                    return false;
                }
            }
        }
        if let (Obj::BinFunc { .. }, Obj::BinFunc { .. }) = (self.a, self.b) {
            let xu = x as u32;
            if self.b.form(y, y) != self.a.form(xu, xu) {
                return false;
            }
            for (u, &mu) in map.iter().enumerate() {
                let u = u as u32;
                if self.b.form(y, mu) != self.a.form(xu, u) || self.b.form(mu, y) != self.a.form(u, xu) {
                    return false;
                }
            }
        }
        if let (Some(ea), Some(eb)) = (self.a.endo(), self.b.endo()) {
            // x maps to y: check σ-commutation for every pair already decided.
            let sx = ea[x] as usize;
            let image_of = |v: usize| if v == x { Some(y) } else { map.get(v).copied() };
            if let Some(msx) = image_of(sx) {
                if msx != eb[y as usize] {
                    return false;
                }
            }
            for (u, &mu) in map.iter().enumerate() {
                if ea[u] as usize == x && eb[mu as usize] != y {
                    return false;
                }
            }
        }
        true
    }

    fn rec(&mut self, map: &mut Vec<u32>, used: &mut Vec<bool>, emit: &mut dyn FnMut(Vec<u32>)) -> Result<()> {
        let x = map.len();
        if x == self.a.card() {
            if matches!(self.cls, MorphismClass::Surj | MorphismClass::Iso) && used.iter().any(|u| !u) {
                return Ok(());
            }
            self.count += 1;
            if self.count > self.cap {
                return Err(hom_cap_error(self.a, self.b, self.cap));
            }
            emit(map.clone());
            return Ok(());
        }
        let track = self.cls != MorphismClass::All;
        let candidates: Vec<u32> = match self.fixed[x] {
            Some(y) => vec![y],
            None => (0..self.b.card() as u32).collect(),
        };
        for y in candidates {
            if y as usize >= self.b.card() {
                continue;
            }
            if self.cls.injective() && used[y as usize] {
                continue;
            }
            if !self.consistent(map, x, y) {
                continue;
            }
            let was = used[y as usize];
            if track {
                used[y as usize] = true;
            }
            map.push(y);
            self.rec(map, used, emit)?;
            map.pop();
            if track {
                used[y as usize] = was;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(o: Obj) -> Arc<Obj> {
        Arc::new(o)
    }

    #[test]
    fn injections_two_into_three() {
        let h = Category::FinSet.hom(&arc(Obj::set(2)), &arc(Obj::set(3)), MorphismClass::Mono, 100).unwrap();
        assert_eq!(h.len(), 6);
    }

    #[test]
    fn edge_to_edge_homs() {
        let e = arc(Obj::graph(2, &[(0, 1)]));
        assert_eq!(Category::FinGraph.hom(&e, &e, MorphismClass::All, 100).unwrap().len(), 2);
    }

    #[test]
    fn graph_counts_up_to_isomorphism() {
        let counts: Vec<usize> = (0..=5).map(|n| Category::FinGraph.objects_of_size(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
        let conn: Vec<usize> = (0..=5).map(|n| Category::ConnGraph.objects_of_size(n).unwrap().len()).collect();
        assert_eq!(conn, vec![0, 1, 1, 2, 6, 21]);
    }

    #[test]
    fn bilinear_forms_up_to_congruence_in_dimension_one() {
        // Over GF(2) a 1x1 Gram matrix is 0 or 1.
        assert_eq!(Category::FinBil(2).objects_of_size(1).unwrap().len(), 2);
        // Over GF(3): 0, squares, non-squares.
        assert_eq!(Category::FinBil(3).objects_of_size(1).unwrap().len(), 3);
    }

    #[test]
    fn surjections_and_isos_are_filtered() {
        let c = Category::FinSet;
        let (a, b) = (arc(Obj::set(3)), arc(Obj::set(2)));
        assert_eq!(c.hom(&a, &b, MorphismClass::Surj, 100).unwrap().len(), 6);
        assert_eq!(c.automorphisms(&a).unwrap().len(), 6);
    }

    #[test]
    fn constrained_search_respects_fixed_values() {
        let c = Category::FinSet;
        let h = c.hom_constrained(&arc(Obj::set(2)), &arc(Obj::set(3)), MorphismClass::Mono, &[(0, 2)], 100).unwrap();
        assert_eq!(h.len(), 2);
        assert!(h.iter().all(|m| m.apply(0) == 2));
    }

    #[test]
    fn hom_cap_is_enforced() {
        let r = Category::FinSet.hom(&arc(Obj::set(4)), &arc(Obj::set(4)), MorphismClass::All, 10);
        assert!(matches!(r, Err(Error::ScopeExceeded(_))));
    }

    #[test]
    fn sigma_graph_homs_commute() {
        let c = Category::SigmaGraph;
        let a = arc(Obj::sigma_graph(&[], vec![1, 0]));
        let b = arc(Obj::sigma_graph(&[(0, 1)], vec![1, 0]));
        let h = c.hom(&a, &b, MorphismClass::All, 100).unwrap();
        assert_eq!(h.len(), 2);
        for m in h {
            assert!(Morphism::new(m.dom().clone(), m.cod().clone(), m.map().to_vec()).is_ok());
        }
    }

    #[test]
    fn product_and_coproduct_homs() {
        let p = Category::Product(Box::new(Category::FinSet), Box::new(Category::FinVec(2)));
        let a = arc(Obj::product(Obj::set(1), Obj::vec(2, 1)));
        let b = arc(Obj::product(Obj::set(2), Obj::vec(2, 2)));
        assert_eq!(p.hom(&a, &b, MorphismClass::Mono, 100).unwrap().len(), 2 * 3);
        let cp = Category::Coproduct(vec![Category::FinSet, Category::FinSet]);
        let x = arc(Obj::tagged(0, Obj::set(1)));
        let y = arc(Obj::tagged(1, Obj::set(1)));
        assert!(cp.hom(&x, &y, MorphismClass::All, 10).unwrap().is_empty());
    }

    #[test]
    fn brute_force_mono_matches_injectivity() {
        let c = Category::FinSet;
        let f = Morphism::new(arc(Obj::set(2)), arc(Obj::set(1)), vec![0, 0]).unwrap();
        assert!(!c.is_mono_bruteforce(&f, 2).unwrap());
        let g = Morphism::new(arc(Obj::vec(2, 1)), arc(Obj::vec(2, 2)), vec![0, 3]).unwrap();
        assert!(Category::FinVec(2).is_mono_bruteforce(&g, 2).unwrap());
    }
}
