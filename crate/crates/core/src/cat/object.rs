//! Finite concrete structures.
//!
//! Every object has a carrier `0..card()`. For vector-space kinds the carrier
//! enumerates all `q^dim` vectors (see [`Field::encode`]); for products it is the
//! disjoint union of the component carriers, left component first.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "ObjRepr", try_from = "ObjRepr")]
pub enum Obj {
    Set { n: u32 },
    /// Simple undirected loop-free graph; edges are stored as sorted `(u, v)` with `u < v`.
    Graph { n: u32, edges: Vec<(u32, u32)> },
    Vec { q: u8, dim: u8 },
    /// Vector space with a (general) bilinear form given by its Gram matrix on the
    /// standard basis, row-major.
    Bil { q: u8, dim: u8, gram: Vec<u8> },
    /// Set with a binary function into GF(q), row-major table.
    BinFunc { q: u8, n: u32, table: Vec<u8> },
    SigmaSet { endo: Vec<u32> },
    /// Graph with a graph endomorphism.
    SigmaGraph { edges: Vec<(u32, u32)>, endo: Vec<u32> },
    Product(Box<Obj>, Box<Obj>),
    /// Object of the `tag`-th summand of a coproduct of categories.
    Tagged(u32, Box<Obj>),
}

impl Obj {
    pub fn set(n: u32) -> Obj {
        Obj::Set { n }
    }

    pub fn graph(n: u32, edges: &[(u32, u32)]) -> Obj {
        Obj::Graph { n, edges: normalize_edges(edges) }
    }

    pub fn vec(q: u8, dim: u8) -> Obj {
        Obj::Vec { q, dim }
    }

    pub fn bil(q: u8, dim: u8, gram: Vec<u8>) -> Obj {
        Obj::Bil { q, dim, gram }
    }

    pub fn binfunc(q: u8, n: u32, table: Vec<u8>) -> Obj {
        Obj::BinFunc { q, n, table }
    }

    pub fn sigma_set(endo: Vec<u32>) -> Obj {
        Obj::SigmaSet { endo }
    }

    pub fn sigma_graph(edges: &[(u32, u32)], endo: Vec<u32>) -> Obj {
        Obj::SigmaGraph { edges: normalize_edges(edges), endo }
    }

    pub fn product(left: Obj, right: Obj) -> Obj {
        Obj::Product(Box::new(left), Box::new(right))
    }

    pub fn tagged(tag: u32, inner: Obj) -> Obj {
        Obj::Tagged(tag, Box::new(inner))
    }

    pub fn kind_tag(&self) -> &'static str {
        match self {
            Obj::Set { .. } => "set",
            Obj::Graph { .. } => "graph",
            Obj::Vec { .. } => "vecspace",
            Obj::Bil { .. } => "bilinear",
            Obj::BinFunc { .. } => "binfunc",
            Obj::SigmaSet { .. } => "sigma-set",
            Obj::SigmaGraph { .. } => "sigma-graph",
            Obj::Product(..) => "product",
            Obj::Tagged(..) => "tagged-component",
        }
    }

    /// Carrier cardinality.
    pub fn card(&self) -> usize {
        match self {
            Obj::Set { n } | Obj::Graph { n, .. } | Obj::BinFunc { n, .. } => *n as usize,
            Obj::Vec { q, dim } | Obj::Bil { q, dim, .. } => (*q as usize).pow(*dim as u32),
            Obj::SigmaSet { endo } | Obj::SigmaGraph { endo, .. } => endo.len(),
            Obj::Product(l, r) => l.card() + r.card(),
            Obj::Tagged(_, inner) => inner.card(),
        }
    }

    /// Size measure used by scopes: dimension for linear kinds, carrier size
    /// otherwise, max of components for products.
    pub fn size(&self) -> usize {
        match self {
            Obj::Vec { dim, .. } | Obj::Bil { dim, .. } => *dim as usize,
            Obj::Product(l, r) => l.size().max(r.size()),
            Obj::Tagged(_, inner) => inner.size(),
            _ => self.card(),
        }
    }

    pub fn same_kind(&self, other: &Obj) -> bool {
        match (self, other) {
            (Obj::Vec { q: a, .. }, Obj::Vec { q: b, .. })
            | (Obj::Bil { q: a, .. }, Obj::Bil { q: b, .. })
            | (Obj::BinFunc { q: a, .. }, Obj::BinFunc { q: b, .. }) => a == b,
            (Obj::Product(a, b), Obj::Product(c, d)) => a.same_kind(c) && b.same_kind(d),
            (Obj::Tagged(_, a), Obj::Tagged(_, b)) => a.same_kind(b),
            _ => std::mem::discriminant(self) == std::mem::discriminant(other),
        }
    }

    /// Field of a linear or binfunc kind.
    pub fn field(&self) -> Option<&'static Field> {
        match self {
            Obj::Vec { q, .. } | Obj::Bil { q, .. } | Obj::BinFunc { q, .. } => Field::get(*q).ok(),
            _ => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Obj::Vec { dim, .. } | Obj::Bil { dim, .. } => Some(*dim as usize),
            _ => None,
        }
    }

    pub fn edges(&self) -> Option<&[(u32, u32)]> {
        match self {
            Obj::Graph { edges, .. } | Obj::SigmaGraph { edges, .. } => Some(edges),
            _ => None,
        }
    }

    pub fn endo(&self) -> Option<&[u32]> {
        match self {
            Obj::SigmaSet { endo } | Obj::SigmaGraph { endo, .. } => Some(endo),
            _ => None,
        }
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges().is_some_and(|e| e.binary_search(&key).is_ok())
    }

    /// Adjacency bitsets, one `u64` per vertex (graph kinds only, at most 64 vertices).
    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.card()];
        for &(u, v) in self.edges().unwrap_or(&[]) {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        adj
    }

    /// Value of the bilinear form on carrier elements `x`, `y`.
    pub fn form(&self, x: u32, y: u32) -> u8 {
        match self {
            Obj::Bil { q, dim, gram } => {
                let f = Field::get(*q).expect("validated field");
                let d = *dim as usize;
                let (a, b) = (f.decode(x, d), f.decode(y, d));
                let mut acc = 0;
                for i in 0..d {
                    for j in 0..d {
                        let t = f.mul(f.mul(a[i], gram[i * d + j]), b[j]);
                        acc = f.add(acc, t);
                    }
                }
                acc
            }
            Obj::BinFunc { n, table, .. } => table[x as usize * *n as usize + y as usize],
            _ => 0,
        }
    }

    /// Carrier index of the `i`-th standard basis vector (linear kinds).
    pub fn basis_element(&self, i: usize) -> u32 {
        let q = self.field().map_or(2, |f| f.order()) as u32;
        q.pow(i as u32)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidObject(msg));
        match self {
            Obj::Set { .. } => Ok(()),
            Obj::Graph { n, edges } => check_edges(*n, edges),
            Obj::Vec { q, .. } => Field::get(*q).map(|_| ()),
            Obj::Bil { q, dim, gram } => {
                Field::get(*q)?;
                if gram.len() != (*dim as usize).pow(2) || gram.iter().any(|&g| g >= *q) {
                    return bad(format!("gram matrix must be {dim}x{dim} over GF({q})"));
                }
                Ok(())
            }
            Obj::BinFunc { q, n, table } => {
                Field::get(*q)?;
                if table.len() != (*n as usize).pow(2) || table.iter().any(|&g| g >= *q) {
                    return bad("binary function table must be total on carrier x carrier".into());
                }
                Ok(())
            }
            Obj::SigmaSet { endo } => check_endo(endo),
            Obj::SigmaGraph { edges, endo } => {
                check_endo(endo)?;
                check_edges(endo.len() as u32, edges)?;
                for &(u, v) in edges {
                    let (a, b) = (endo[u as usize], endo[v as usize]);
                    if a == b || !self.has_edge(a, b) {
                        return bad(format!("endomorphism does not preserve edge {u}-{v}"));
                    }
                }
                Ok(())
            }
            Obj::Product(l, r) => {
                l.validate()?;
                r.validate()
            }
            Obj::Tagged(_, inner) => inner.validate(),
        }
    }

    /// Canonical representative of the isomorphism class (lexicographically least
    /// relabeling for discrete structure, least congruent Gram matrix for forms).
    pub fn canonical(&self) -> Obj {
        match self {
            Obj::Set { .. } | Obj::Vec { .. } => self.clone(),
            Obj::Graph { n, .. } | Obj::BinFunc { n, .. } => self.min_relabeling(*n as usize),
            Obj::SigmaSet { endo } | Obj::SigmaGraph { endo, .. } => self.min_relabeling(endo.len()),
            Obj::Bil { q, dim, gram } => {
                let f = Field::get(*q).expect("validated field");
                let d = *dim as usize;
                let best = general_linear_group(f, d)
                    .into_iter()
                    .map(|p| congruent(f, gram, &p, d))
                    .min()
                    .unwrap_or_else(|| gram.clone());
                Obj::Bil { q: *q, dim: *dim, gram: best }
            }
            Obj::Product(l, r) => Obj::product(l.canonical(), r.canonical()),
            Obj::Tagged(t, inner) => Obj::tagged(*t, inner.canonical()),
        }
    }

    fn min_relabeling(&self, n: usize) -> Obj {
        (0..n)
            .permutations(n)
            .map(|p| self.relabel(&p))
            .min()
            .unwrap_or_else(|| self.clone())
    }

    /// Transport the structure along the bijection `perm` (old element `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Obj {
        let p = |x: u32| perm[x as usize] as u32;
        match self {
            Obj::Graph { n, edges } => {
                Obj::Graph { n: *n, edges: normalize_edges(&edges.iter().map(|&(u, v)| (p(u), p(v))).collect_vec()) }
            }
            Obj::BinFunc { q, n, table } => {
                let n_ = *n as usize;
                let mut t = vec![0; table.len()];
                for x in 0..n_ {
                    for y in 0..n_ {
                        t[perm[x] * n_ + perm[y]] = table[x * n_ + y];
                    }
                }
                Obj::BinFunc { q: *q, n: *n, table: t }
            }
            Obj::SigmaSet { endo } => Obj::SigmaSet { endo: relabel_endo(endo, perm) },
            Obj::SigmaGraph { edges, endo } => Obj::SigmaGraph {
                edges: normalize_edges(&edges.iter().map(|&(u, v)| (p(u), p(v))).collect_vec()),
                endo: relabel_endo(endo, perm),
            },
            _ => self.clone(),
        }
    }
}

fn relabel_endo(endo: &[u32], perm: &[usize]) -> Vec<u32> {
    let mut out = vec![0; endo.len()];
    for (x, &y) in endo.iter().enumerate() {
        out[perm[x]] = perm[y as usize] as u32;
    }
    out
}

pub(crate) fn normalize_edges(edges: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut e: Vec<(u32, u32)> = edges.iter().map(|&(u, v)| if u < v { (u, v) } else { (v, u) }).collect();
    e.sort_unstable();
    e.dedup();
    e
}

fn check_edges(n: u32, edges: &[(u32, u32)]) -> Result<(), Error> {
    if n > 64 {
        return Err(Error::InvalidObject("graphs are limited to 64 vertices".into()));
    }
    for w in edges.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidObject("edge list must be sorted and duplicate-free".into()));
        }
    }
    for &(u, v) in edges {
        if u >= v || v >= n {
            return Err(Error::InvalidObject(format!("edge {u}-{v} is a loop or leaves the carrier")));
        }
    }
    Ok(())
}

fn check_endo(endo: &[u32]) -> Result<(), Error> {
    if endo.iter().any(|&y| y as usize >= endo.len()) {
        return Err(Error::InvalidObject("endomorphism table must be a total self-map".into()));
    }
    Ok(())
}

/// All invertible `d x d` matrices over `f`, each as a list of columns.
pub fn general_linear_group(f: &Field, d: usize) -> Vec<Vec<Vec<u8>>> {
    let vectors: Vec<Vec<u8>> = (0..f.space_size(d) as u32).map(|i| f.decode(i, d)).collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vec<u8>> = Vec::new();
    fn rec(f: &Field, d: usize, vectors: &[Vec<u8>], cols: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if cols.len() == d {
            out.push(cols.clone());
            return;
        }
        for v in vectors {
            cols.push(v.clone());
            if super::linalg::rank(f, cols, d) == cols.len() {
                rec(f, d, vectors, cols, out);
            }
            cols.pop();
        }
    }
    rec(f, d, &vectors, &mut cols, &mut out);
    out
}

/// Gram matrix of the form `(x, y) -> [P x, P y]`, i.e. `P^T G P`.
pub fn congruent(f: &Field, gram: &[u8], p: &[Vec<u8>], d: usize) -> Vec<u8> {
    let mut out = vec![0u8; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0;
            for a in 0..d {
                for b in 0..d {
                    let t = f.mul(f.mul(p[i][a], gram[a * d + b]), p[j][b]);
                    acc = f.add(acc, t);
                }
            }
            out[i * d + j] = acc;
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct ObjRepr {
    kind: String,
    carrier: Vec<u32>,
    #[serde(default)]
    data: ObjData,
}

#[derive(Default, Serialize, Deserialize)]
struct ObjData {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    q: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dim: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    edges: Option<Vec<(u32, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    gram: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    table: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    endo: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tag: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    components: Option<Vec<Obj>>,
}

impl From<Obj> for ObjRepr {
    fn from(o: Obj) -> Self {
        let kind = o.kind_tag().to_string();
        let carrier = (0..o.card() as u32).collect();
        let mut data = ObjData::default();
        match o {
            Obj::Set { .. } => {}
            Obj::Graph { edges, .. } => data.edges = Some(edges),
            Obj::Vec { q, dim } => {
                data.q = Some(q);
                data.dim = Some(dim);
            }
            Obj::Bil { q, dim, gram } => {
                data.q = Some(q);
                data.dim = Some(dim);
                data.gram = Some(gram);
            }
            Obj::BinFunc { q, table, .. } => {
                data.q = Some(q);
                data.table = Some(table);
            }
            Obj::SigmaSet { endo } => data.endo = Some(endo),
            Obj::SigmaGraph { edges, endo } => {
                data.edges = Some(edges);
                data.endo = Some(endo);
            }
            Obj::Product(l, r) => data.components = Some(vec![*l, *r]),
            Obj::Tagged(t, inner) => {
                data.tag = Some(t);
                data.components = Some(vec![*inner]);
            }
        }
        ObjRepr { kind, carrier, data }
    }
}

impl TryFrom<ObjRepr> for Obj {
    type Error = Error;

    fn try_from(r: ObjRepr) -> Result<Obj, Error> {
        let missing = |field: &str| Error::Parse(format!("{} object is missing `{field}`", r.kind));
        let n = r.carrier.len() as u32;
        if r.carrier.iter().enumerate().any(|(i, &x)| x != i as u32) {
            return Err(Error::Parse("carrier must be the list 0..n".into()));
        }
        let d = &r.data;
        let obj = match r.kind.as_str() {
            "set" => Obj::Set { n },
            "graph" => Obj::Graph { n, edges: d.edges.clone().ok_or_else(|| missing("edges"))? },
            "vecspace" => Obj::Vec { q: d.q.ok_or_else(|| missing("q"))?, dim: d.dim.ok_or_else(|| missing("dim"))? },
            "bilinear" => Obj::Bil {
                q: d.q.ok_or_else(|| missing("q"))?,
                dim: d.dim.ok_or_else(|| missing("dim"))?,
                gram: d.gram.clone().ok_or_else(|| missing("gram"))?,
            },
            "binfunc" => Obj::BinFunc {
                q: d.q.ok_or_else(|| missing("q"))?,
                n,
                table: d.table.clone().ok_or_else(|| missing("table"))?,
            },
            "sigma-set" => Obj::SigmaSet { endo: d.endo.clone().ok_or_else(|| missing("endo"))? },
            "sigma-graph" => Obj::SigmaGraph {
                edges: d.edges.clone().ok_or_else(|| missing("edges"))?,
                endo: d.endo.clone().ok_or_else(|| missing("endo"))?,
            },
            "product" => {
                let c = d.components.clone().ok_or_else(|| missing("components"))?;
                let [l, r]: [Obj; 2] = c.try_into().map_err(|_| Error::Parse("product needs two components".into()))?;
                Obj::product(l, r)
            }
            "tagged-component" => {
                let c = d.components.clone().ok_or_else(|| missing("components"))?;
                let [inner]: [Obj; 1] = c.try_into().map_err(|_| Error::Parse("tagged object needs one component".into()))?;
                Obj::tagged(d.tag.ok_or_else(|| missing("tag"))?, inner)
            }
            other => return Err(Error::Parse(format!("unknown kind `{other}`"))),
        };
        if obj.card() != n as usize {
            return Err(Error::Parse(format!("carrier length {n} does not match {} object", obj.kind_tag())));
        }
        obj.validate()?;
        Ok(obj)
    }
}
