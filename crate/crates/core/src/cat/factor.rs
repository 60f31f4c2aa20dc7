//! Image factorizations, subobject lattices and binary joins.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{Category, DEFAULT_HOM_CAP};
use super::class::MorphismClass;
use super::diagram::{Cospan, Span};
use super::field::Field;
use super::limits::pullback;
use super::linalg;
use super::morphism::Morphism;
use super::multipushout::multipushout;
use super::object::Obj;
use crate::{Error, Result};

/// An (E, M) factorization system with `e = Surj` and `m` either all injective
/// morphisms or embeddings. The two differ only for graph kinds: the image of an
/// embedding system is induced, the image of the mono system carries image edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSystem {
    pub e: MorphismClass,
    pub m: MorphismClass,
}

impl FactorizationSystem {
    pub const SURJ_EMB: FactorizationSystem = FactorizationSystem { e: MorphismClass::Surj, m: MorphismClass::Emb };
    pub const SURJ_MONO: FactorizationSystem = FactorizationSystem { e: MorphismClass::Surj, m: MorphismClass::Mono };

    /// The system matching a category whose morphisms are restricted to `cls`.
    pub fn for_class(cls: MorphismClass) -> FactorizationSystem {
        match cls {
            MorphismClass::Emb | MorphismClass::Iso => Self::SURJ_EMB,
            _ => Self::SURJ_MONO,
        }
    }

    fn induced(self) -> bool {
        self.m == MorphismClass::Emb
    }
}

/// `f = m ∘ e` with `e` surjective and `m` the inclusion of the image.
pub fn factorize(fs: FactorizationSystem, f: &Morphism) -> Result<(Morphism, Morphism)> {
    let (image, e, m) = image_parts(f, fs.induced())?;
    let image = Arc::new(image);
    Ok((Morphism::new(f.dom().clone(), image.clone(), e)?, Morphism::new(image, f.cod().clone(), m)?))
}

type Parts = (Obj, Vec<u32>, Vec<u32>);

fn image_parts(f: &Morphism, induced: bool) -> Result<Parts> {
    let (dom, cod) = (&**f.dom(), &**f.cod());
    match (dom, cod) {
        (Obj::Product(..), _) => {
            let (l, r) = f.split().ok_or_else(|| Error::Kind("expected product".into()))?;
            let (li, le, lm) = image_parts(&l, induced)?;
            let (ri, re, rm) = image_parts(&r, induced)?;
            let (off, cod_off) = (li.card() as u32, l.cod().card() as u32);
            let e = le.into_iter().chain(re.into_iter().map(|y| y + off)).collect();
            let m = lm.into_iter().chain(rm.into_iter().map(|y| y + cod_off)).collect();
            Ok((Obj::product(li, ri), e, m))
        }
        (Obj::Tagged(t, _), _) => {
            let inner = f.untag().ok_or_else(|| Error::Kind("expected tagged".into()))?;
            let (i, e, m) = image_parts(&inner, induced)?;
            Ok((Obj::tagged(*t, i), e, m))
        }
        (Obj::Vec { q, .. }, _) | (Obj::Bil { q, .. }, _) => {
            let fld = Field::get(*q)?;
            let c = cod.dim().unwrap();
            let (basis, pivots) = linalg::rref(fld, &f.columns(), c);
            let k = basis.len();
            let img = match cod {
                Obj::Bil { .. } => {
                    let enc: Vec<u32> = basis.iter().map(|v| fld.encode(v)).collect();
                    let gram = (0..k * k).map(|ij| cod.form(enc[ij / k], enc[ij % k])).collect();
                    Obj::bil(*q, k as u8, gram)
                }
                _ => Obj::vec(*q, k as u8),
            };
            let e = (0..dom.card() as u32)
                .map(|x| {
                    let y = fld.decode(f.apply(x), c);
                    fld.encode(&pivots.iter().map(|&p| y[p]).collect::<Vec<_>>())
                })
                .collect();
            let m = super::morphism::linear_table(fld, &basis, k, c);
            Ok((img, e, m))
        }
        _ => {
            let im = f.image();
            let pos = |y: u32| im.binary_search(&y).expect("in image") as u32;
            let e: Vec<u32> = f.map().iter().map(|&y| pos(y)).collect();
            let n = im.len() as u32;
            let edges = || -> Vec<(u32, u32)> {
                if induced {
                    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| cod.has_edge(im[i as usize], im[j as usize])).collect()
                } else {
                    dom.edges().unwrap_or(&[]).iter().map(|&(u, v)| (e[u as usize], e[v as usize])).collect()
                }
            };
            let endo = || -> Vec<u32> { im.iter().map(|&y| pos(cod.endo().expect("sigma")[y as usize])).collect() };
            let img = match cod {
                Obj::Set { .. } => Obj::set(n),
                Obj::Graph { .. } => Obj::graph(n, &edges()),
                Obj::SigmaSet { .. } => Obj::sigma_set(endo()),
                Obj::SigmaGraph { .. } => Obj::sigma_graph(&edges(), endo()),
                Obj::BinFunc { q, .. } => {
                    Obj::binfunc(*q, n, (0..n * n).map(|ij| cod.form(im[(ij / n) as usize], im[(ij % n) as usize])).collect())
                }
                other => return Err(Error::Kind(format!("no image factorization for {}", other.kind_tag()))),
            };
            Ok((img, e, im))
        }
    }
}

/// Least subobject of the common codomain containing the image of every part,
/// with each part factored through it.
pub fn generated(fs: FactorizationSystem, parts: &[Morphism]) -> Result<(Morphism, Vec<Morphism>)> {
    let cod = parts.first().ok_or_else(|| Error::Contract("no morphisms to join".into()))?.cod().clone();
    if parts.iter().any(|p| p.cod() != &cod) {
        return Err(Error::Contract("morphisms have different codomains".into()));
    }
    let (img, _, m) = image_parts(&joint(parts)?, fs.induced())?;
    let img = Arc::new(img);
    let mut pos = vec![u32::MAX; cod.card()];
    for (i, &y) in m.iter().enumerate() {
        pos[y as usize] = i as u32;
    }
    let incl = Morphism::new(img.clone(), cod, m)?;
    let factors = parts
        .iter()
        .map(|p| Morphism::new(p.dom().clone(), img.clone(), p.map().iter().map(|&y| pos[y as usize]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok((incl, factors))
}

/// One morphism out of a disjoint sum of the part domains whose image is the union
/// of the part images; structure on the sum is the disjoint sum, or pulled back for
/// forms.
fn joint(parts: &[Morphism]) -> Result<Morphism> {
    let cod = parts[0].cod().clone();
    match &*cod {
        Obj::Product(..) => {
            let split = parts
                .iter()
                .map(|p| p.split().ok_or_else(|| Error::Kind("expected product".into())))
                .collect::<Result<Vec<_>>>()?;
            let (ls, rs): (Vec<Morphism>, Vec<Morphism>) = split.into_iter().unzip();
            let (l, r) = (joint(&ls)?, joint(&rs)?);
            let cod_off = l.cod().card() as u32;
            let map = l.map().iter().copied().chain(r.map().iter().map(|&y| y + cod_off)).collect();
            Ok(Morphism::raw(Arc::new(Obj::product((**l.dom()).clone(), (**r.dom()).clone())), cod, map))
        }
        Obj::Tagged(t, _) => {
            let inner = parts
                .iter()
                .map(|p| p.untag().ok_or_else(|| Error::Kind("expected tagged".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(joint(&inner)?.tag(*t))
        }
        Obj::Vec { q, .. } | Obj::Bil { q, .. } => {
            let fld = Field::get(*q)?;
            let cols: Vec<Vec<u8>> = parts.iter().flat_map(|p| p.columns()).collect();
            let d = cols.len();
            let map = super::morphism::linear_table(fld, &cols, d, cod.dim().unwrap());
            let dom = match &*cod {
                Obj::Bil { .. } => {
                    let enc: Vec<u32> = cols.iter().map(|c| fld.encode(c)).collect();
                    Obj::bil(*q, d as u8, (0..d * d).map(|ij| cod.form(enc[ij / d], enc[ij % d])).collect())
                }
                _ => Obj::vec(*q, d as u8),
            };
            Ok(Morphism::raw(Arc::new(dom), cod, map))
        }
        _ => {
            let (mut edges, mut endo, mut map) = (Vec::new(), Vec::new(), Vec::new());
            for p in parts {
                let off = map.len() as u32;
                edges.extend(p.dom().edges().unwrap_or(&[]).iter().map(|&(u, v)| (u + off, v + off)));
                endo.extend(p.dom().endo().unwrap_or(&[]).iter().map(|&x| x + off));
                map.extend_from_slice(p.map());
            }
            let n = map.len() as u32;
            let dom = match &*cod {
                Obj::Set { .. } => Obj::set(n),
                Obj::SigmaSet { .. } => Obj::sigma_set(endo),
                Obj::SigmaGraph { .. } => Obj::sigma_graph(&edges, endo),
                Obj::BinFunc { q, .. } => Obj::binfunc(
                    *q,
                    n,
                    (0..n * n).map(|ij| cod.form(map[(ij / n) as usize], map[(ij % n) as usize])).collect(),
                ),
                _ => Obj::graph(n, &edges),
            };
            Ok(Morphism::raw(Arc::new(dom), cod, map))
        }
    }
}

/// A subobject of `mono.cod()`, represented by the inclusion of its image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subobject {
    pub mono: Morphism,
}

impl Subobject {
    /// Canonical representative of the subobject given by `m`.
    pub fn new(fs: FactorizationSystem, m: &Morphism) -> Result<Subobject> {
        if !fs.m.contains(m) {
            return Err(Error::InvalidMorphism(format!("not in the {} class", fs.m.name())));
        }
        Ok(Subobject { mono: factorize(fs, m)?.1 })
    }

    pub fn obj(&self) -> &Arc<Obj> {
        self.mono.dom()
    }

    pub fn ambient(&self) -> &Arc<Obj> {
        self.mono.cod()
    }

    /// The unique `u` with `other.mono ∘ u = self.mono`, if any.
    pub fn factor_through(&self, other: &Subobject) -> Option<Morphism> {
        let map: Option<Vec<u32>> =
            self.mono.map().iter().map(|y| other.mono.map().iter().position(|z| z == y).map(|p| p as u32)).collect();
        Morphism::new(self.obj().clone(), other.obj().clone(), map?).ok()
    }

    pub fn le(&self, other: &Subobject) -> bool {
        self.factor_through(other).is_some()
    }

    /// Same subobject: factors both ways.
    pub fn same(&self, other: &Subobject) -> bool {
        self.le(other) && other.le(self)
    }
}

/// All subobjects of `d` in the m-class, smallest first, then by image.
pub fn subobjects_of(cat: &Category, fs: FactorizationSystem, d: &Arc<Obj>) -> Result<Vec<Subobject>> {
    let mut out: Vec<Subobject> = Vec::new();
    for x in cat.objects(d.size())? {
        let x = Arc::new(x);
        if !x.same_kind(d) || x.card() > d.card() {
            continue;
        }
        for m in cat.hom(&x, d, fs.m, DEFAULT_HOM_CAP)? {
            let s = Subobject::new(fs, &m)?;
            if !out.iter().any(|t| t.mono == s.mono) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| (a.obj().card(), a.mono.image(), a.obj()).cmp(&(b.obj().card(), b.mono.image(), b.obj())));
    Ok(out)
}

/// Least subobject above `a` and `b`, by scanning the whole lattice.
pub fn join_bruteforce(cat: &Category, fs: FactorizationSystem, a: &Subobject, b: &Subobject) -> Result<Subobject> {
    if a.ambient() != b.ambient() {
        return Err(Error::Contract("subobjects of different objects".into()));
    }
    let subs = subobjects_of(cat, fs, a.ambient())?;
    let upper: Vec<&Subobject> = subs.iter().filter(|s| a.le(s) && b.le(s)).collect();
    upper
        .iter()
        .find(|s| upper.iter().all(|t| s.le(t)))
        .map(|s| (*s).clone())
        .ok_or_else(|| Error::Construction("no join in the subobject lattice".into()))
}

/// Join via the multipushout instance of a completing span that maps to the ambient
/// object, followed by image factorization.
pub fn join_via_multipushout(
    cat: &Category,
    fs: FactorizationSystem,
    a: &Subobject,
    b: &Subobject,
) -> Result<Subobject> {
    if a.ambient() != b.ambient() {
        return Err(Error::Contract("subobjects of different objects".into()));
    }
    let d = a.ambient();
    let span = completing_span(cat, fs, &a.mono, &b.mono)?;
    let bound = a.obj().size() + b.obj().size();
    for k in multipushout(cat, &span, bound)? {
        let mut cons: Vec<(u32, u32)> = (0..a.obj().card() as u32).map(|x| (k.left.apply(x), a.mono.apply(x))).collect();
        cons.extend((0..b.obj().card() as u32).map(|x| (k.right.apply(x), b.mono.apply(x))));
        if let Some(u) = cat.hom_constrained(k.apex(), d, MorphismClass::All, &cons, DEFAULT_HOM_CAP)?.into_iter().next() {
            return Ok(Subobject { mono: factorize(fs, &u)?.1 });
        }
    }
    Err(Error::Construction("no multipushout instance maps to the ambient object".into()))
}

/// A span completing `a`, `b` to a commuting square: the pullback where the category
/// has one, otherwise the largest commuting span found by search.
fn completing_span(cat: &Category, fs: FactorizationSystem, a: &Morphism, b: &Morphism) -> Result<Span> {
    let cospan = Cospan::new(a.clone(), b.clone())?;
    if cat.capabilities().pullback {
        return Ok(pullback(cat, &cospan)?.span());
    }
    let mut best: Option<Span> = None;
    for x in cat.objects(a.dom().size().min(b.dom().size()))? {
        let x = Arc::new(x);
        if best.as_ref().is_some_and(|s| s.apex().card() >= x.card()) {
            continue;
        }
        'outer: for f in cat.hom(&x, a.dom(), fs.m, DEFAULT_HOM_CAP)? {
            for g in cat.hom(&x, b.dom(), fs.m, DEFAULT_HOM_CAP)? {
                if Morphism::compose(a, &f)? == Morphism::compose(b, &g)? {
                    best = Some(Span::new(f, g)?);
                    break 'outer;
                }
            }
        }
    }
    best.ok_or_else(|| Error::Construction("no span completes the cospan".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(o: Obj) -> Arc<Obj> {
        Arc::new(o)
    }

    #[test]
    fn factorization_recomposes_exactly() {
        let (a, d) = (arc(Obj::graph(3, &[(0, 1)])), arc(Obj::graph(3, &[(0, 1), (1, 2)])));
        let f = Morphism::new(a, d, vec![0, 1, 0]).unwrap();
        for fs in [FactorizationSystem::SURJ_EMB, FactorizationSystem::SURJ_MONO] {
            let (e, m) = factorize(fs, &f).unwrap();
            assert_eq!(Morphism::compose(&m, &e).unwrap(), f);
            assert!(fs.e.contains(&e) && fs.m.contains(&m));
        }
    }

    #[test]
    fn collapsing_map_factors_through_induced_image() {
        // Path 0-1-2 with the ends collapsed onto a 3-vertex triangle-free codomain.
        let a = arc(Obj::graph(3, &[(0, 1), (1, 2)]));
        let d = arc(Obj::graph(3, &[(0, 1), (1, 2)]));
        let f = Morphism::new(a, d, vec![0, 1, 0]).unwrap();
        let (e, m) = factorize(FactorizationSystem::SURJ_EMB, &f).unwrap();
        assert_eq!(**e.cod(), Obj::graph(2, &[(0, 1)]));
        assert!(m.is_embedding());
    }

    #[test]
    fn linear_image_is_a_subspace() {
        let (a, d) = (arc(Obj::vec(2, 2)), arc(Obj::vec(2, 2)));
        let f = Morphism::from_columns(a, d, &[vec![1, 1], vec![1, 1]]).unwrap();
        let (e, m) = factorize(FactorizationSystem::SURJ_MONO, &f).unwrap();
        assert_eq!(e.cod().dim(), Some(1));
        assert_eq!(Morphism::compose(&m, &e).unwrap(), f);
    }

    #[test]
    fn subobject_counts() {
        let fs = FactorizationSystem::SURJ_MONO;
        assert_eq!(subobjects_of(&Category::FinSet, fs, &arc(Obj::set(2))).unwrap().len(), 4);
        assert_eq!(subobjects_of(&Category::FinVec(2), fs, &arc(Obj::vec(2, 2))).unwrap().len(), 5);
    }

    #[test]
    fn lines_join_to_the_plane() {
        let (l, p) = (arc(Obj::vec(2, 1)), arc(Obj::vec(2, 2)));
        let fs = FactorizationSystem::SURJ_MONO;
        let u = Subobject::new(fs, &Morphism::new(l.clone(), p.clone(), vec![0, 1]).unwrap()).unwrap();
        let w = Subobject::new(fs, &Morphism::new(l, p.clone(), vec![0, 2]).unwrap()).unwrap();
        let j = join_bruteforce(&Category::FinVec(2), fs, &u, &w).unwrap();
        assert!(j.mono.is_iso());
        assert!(join_via_multipushout(&Category::FinVec(2), fs, &u, &w).unwrap().same(&j));
    }

    #[test]
    fn disjoint_points_join_to_their_union() {
        let (x, d) = (arc(Obj::set(1)), arc(Obj::set(3)));
        let fs = FactorizationSystem::SURJ_MONO;
        let a = Subobject::new(fs, &Morphism::new(x.clone(), d.clone(), vec![0]).unwrap()).unwrap();
        let b = Subobject::new(fs, &Morphism::new(x, d, vec![1]).unwrap()).unwrap();
        let j = join_via_multipushout(&Category::FinSet, fs, &a, &b).unwrap();
        assert_eq!(j.mono.image(), vec![0, 1]);
    }

    #[test]
    fn generated_subobject_is_the_union_of_images() {
        let m = arc(Obj::graph(4, &[(0, 1), (1, 2), (2, 3)]));
        let a = Morphism::new(arc(Obj::graph(1, &[])), m.clone(), vec![0]).unwrap();
        let b = Morphism::new(arc(Obj::graph(2, &[])), m.clone(), vec![1, 3]).unwrap();
        let (incl, fs) = generated(FactorizationSystem::SURJ_EMB, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(incl.map(), &[0, 1, 3]);
        assert_eq!(**incl.dom(), Obj::graph(3, &[(0, 1)]));
        assert_eq!(Morphism::compose(&incl, &fs[0]).unwrap(), a);
        assert_eq!(Morphism::compose(&incl, &fs[1]).unwrap(), b);
        let (mono, _) = generated(FactorizationSystem::SURJ_MONO, &[a, b]).unwrap();
        assert_eq!(**mono.dom(), Obj::graph(3, &[]));
    }

    #[test]
    fn generated_subspace_is_the_span() {
        let p = arc(Obj::vec(2, 3));
        let l1 = Morphism::new(arc(Obj::vec(2, 1)), p.clone(), vec![0, 1]).unwrap();
        let l2 = Morphism::new(arc(Obj::vec(2, 1)), p.clone(), vec![0, 2]).unwrap();
        let (incl, _) = generated(FactorizationSystem::SURJ_MONO, &[l1, l2]).unwrap();
        assert_eq!(incl.image(), vec![0, 1, 2, 3]);
    }
}
