//! Structure-preserving maps stored as carrier tables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::linalg;
use super::object::Obj;
use crate::{Error, Result};

/// A total map `dom -> cod` on carriers. Equality is table equality with
/// equal endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Morphism {
    dom: Arc<Obj>,
    cod: Arc<Obj>,
    map: Vec<u32>,
}

impl Morphism {
    /// Validated constructor: the table must be total and structure-preserving.
    pub fn new(dom: Arc<Obj>, cod: Arc<Obj>, map: Vec<u32>) -> Result<Morphism> {
        check_structure(&dom, &cod, &map).map_err(Error::InvalidMorphism)?;
        Ok(Morphism { dom, cod, map })
    }

    /// Constructor for tables already known to be structure-preserving.
    pub(crate) fn raw(dom: Arc<Obj>, cod: Arc<Obj>, map: Vec<u32>) -> Morphism {
        debug_assert_eq!(check_structure(&dom, &cod, &map), Ok(()), "{dom:?} -> {cod:?} by {map:?}");
        Morphism { dom, cod, map }
    }

    pub fn identity(obj: &Arc<Obj>) -> Morphism {
        Morphism { dom: obj.clone(), cod: obj.clone(), map: (0..obj.card() as u32).collect() }
    }

    /// Linear map given by the images of the standard basis (as coordinate vectors).
    pub fn from_columns(dom: Arc<Obj>, cod: Arc<Obj>, columns: &[Vec<u8>]) -> Result<Morphism> {
        let (f, d_dim, c_dim) = match (dom.field(), dom.dim(), cod.dim()) {
            (Some(f), Some(a), Some(b)) => (f, a, b),
            _ => return Err(Error::Kind("from_columns needs linear objects".into())),
        };
        if columns.len() != d_dim || columns.iter().any(|c| c.len() != c_dim) {
            return Err(Error::InvalidMorphism("column shape does not match dimensions".into()));
        }
        let map = linear_table(f, columns, d_dim, c_dim);
        Morphism::new(dom, cod, map)
    }

    /// Pairs two morphisms into a morphism of product objects.
    pub fn pair(left: &Morphism, right: &Morphism) -> Morphism {
        let dom = Arc::new(Obj::product((*left.dom).clone(), (*right.dom).clone()));
        let cod = Arc::new(Obj::product((*left.cod).clone(), (*right.cod).clone()));
        let off = left.cod.card() as u32;
        let map = left.map.iter().copied().chain(right.map.iter().map(|&y| y + off)).collect();
        Morphism { dom, cod, map }
    }

    /// Components of a morphism between product objects.
    pub fn split(&self) -> Option<(Morphism, Morphism)> {
        let (Obj::Product(dl, dr), Obj::Product(cl, cr)) = (&*self.dom, &*self.cod) else {
            return None;
        };
        let (n, off) = (dl.card(), cl.card() as u32);
        let left = Morphism { dom: Arc::new((**dl).clone()), cod: Arc::new((**cl).clone()), map: self.map[..n].to_vec() };
        let right = Morphism {
            dom: Arc::new((**dr).clone()),
            cod: Arc::new((**cr).clone()),
            map: self.map[n..].iter().map(|&y| y - off).collect(),
        };
        Some((left, right))
    }

    /// Strips matching coproduct tags from both endpoints.
    pub fn untag(&self) -> Option<Morphism> {
        match (&*self.dom, &*self.cod) {
            (Obj::Tagged(_, d), Obj::Tagged(_, c)) => {
                Some(Morphism { dom: Arc::new((**d).clone()), cod: Arc::new((**c).clone()), map: self.map.clone() })
            }
            _ => None,
        }
    }

    /// Re-tags both endpoints with `tag`.
    pub fn tag(&self, tag: u32) -> Morphism {
        Morphism {
            dom: Arc::new(Obj::tagged(tag, (*self.dom).clone())),
            cod: Arc::new(Obj::tagged(tag, (*self.cod).clone())),
            map: self.map.clone(),
        }
    }

    pub fn dom(&self) -> &Arc<Obj> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Obj> {
        &self.cod
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    /// `g ∘ f`.
    pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.cod != g.dom {
            return Err(Error::Composition(format!(
                "codomain {} of the first map differs from domain {} of the second",
                f.cod.kind_tag(),
                g.dom.kind_tag()
            )));
        }
        Ok(Morphism { dom: f.dom.clone(), cod: g.cod.clone(), map: f.map.iter().map(|&x| g.map[x as usize]).collect() })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        Morphism::compose(g, self)
    }

    /// The same table between new endpoints, validated.
    pub fn with_endpoints(&self, dom: Arc<Obj>, cod: Arc<Obj>) -> Result<Morphism> {
        Morphism::new(dom, cod, self.map.clone())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.card()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.card()];
        for &y in &self.map {
            seen[y as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Sorted, duplicate-free image.
    pub fn image(&self) -> Vec<u32> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    /// Injective and reflecting all structure that homomorphisms need not reflect
    /// (non-edges for graph kinds), componentwise for products.
    pub fn is_embedding(&self) -> bool {
        if !self.is_injective() {
            return false;
        }
        match (&*self.dom, &*self.cod) {
            (Obj::Graph { .. }, _) | (Obj::SigmaGraph { .. }, _) => {
                let n = self.dom.card() as u32;
                (0..n).all(|u| {
                    (u + 1..n).all(|v| self.dom.has_edge(u, v) || !self.cod.has_edge(self.apply(u), self.apply(v)))
                })
            }
            (Obj::Product(..), _) => self.split().is_some_and(|(l, r)| l.is_embedding() && r.is_embedding()),
            (Obj::Tagged(..), _) => self.untag().is_some_and(|m| m.is_embedding()),
            _ => true,
        }
    }

    pub fn is_iso(&self) -> bool {
        self.is_surjective() && self.is_embedding()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Some(Morphism { dom: self.cod.clone(), cod: self.dom.clone(), map: inv })
    }

    /// Images of the standard basis as coordinate vectors (linear kinds).
    pub fn columns(&self) -> Vec<Vec<u8>> {
        let (Some(f), Some(d), Some(c)) = (self.dom.field(), self.dom.dim(), self.cod.dim()) else {
            return Vec::new();
        };
        (0..d).map(|i| f.decode(self.map[self.dom.basis_element(i) as usize], c)).collect()
    }
}

pub(crate) fn linear_table(f: &Field, columns: &[Vec<u8>], d_dim: usize, c_dim: usize) -> Vec<u32> {
    (0..f.space_size(d_dim) as u32)
        .map(|x| f.encode(&linalg::apply_columns(f, columns, c_dim, &f.decode(x, d_dim))))
        .collect()
}

/// `Ok` iff `map` is a homomorphism `dom -> cod`.
pub fn check_structure(dom: &Obj, cod: &Obj, map: &[u32]) -> std::result::Result<(), String> {
    if map.len() != dom.card() {
        return Err(format!("table has {} entries for a carrier of {}", map.len(), dom.card()));
    }
    if let Some(&y) = map.iter().find(|&&y| y as usize >= cod.card()) {
        return Err(format!("value {y} leaves the codomain carrier"));
    }
    let m = |x: u32| map[x as usize];
    let edges_ok = || {
        dom.edges().unwrap_or(&[]).iter().all(|&(u, v)| m(u) != m(v) && cod.has_edge(m(u), m(v)))
    };
    let endo_ok = |a: &[u32], b: &[u32]| (0..a.len()).all(|x| map[a[x] as usize] == b[map[x] as usize]);
    let ok = match (dom, cod) {
        (Obj::Set { .. }, Obj::Set { .. }) => true,
        (Obj::Graph { .. }, Obj::Graph { .. }) => edges_ok(),
        (Obj::SigmaSet { endo: a }, Obj::SigmaSet { endo: b }) => endo_ok(a, b),
        (Obj::SigmaGraph { endo: a, .. }, Obj::SigmaGraph { endo: b, .. }) => edges_ok() && endo_ok(a, b),
        (Obj::Vec { q: p, dim: d }, Obj::Vec { q, dim: c }) | (Obj::Bil { q: p, dim: d, .. }, Obj::Bil { q, dim: c, .. }) => {
            if p != q {
                return Err("field orders differ".into());
            }
            let f = Field::get(*q).map_err(|e| e.to_string())?;
            let (d, c) = (*d as usize, *c as usize);
            let cols: Vec<Vec<u8>> = (0..d).map(|i| f.decode(m(dom.basis_element(i)), c)).collect();
            if linear_table(f, &cols, d, c) != map {
                return Err("table is not linear".into());
            }
            let mut ok = true;
            if let Obj::Bil { .. } = dom {
                for i in 0..d {
                    for j in 0..d {
                        let (x, y) = (dom.basis_element(i), dom.basis_element(j));
                        ok &= cod.form(m(x), m(y)) == dom.form(x, y);
                    }
                }
            }
            ok
        }
        (Obj::BinFunc { q: p, n, .. }, Obj::BinFunc { q, .. }) => {
            p == q && (0..*n).all(|x| (0..*n).all(|y| cod.form(m(x), m(y)) == dom.form(x, y)))
        }
        (Obj::Product(dl, dr), Obj::Product(cl, cr)) => {
            let (n, off) = (dl.card(), cl.card() as u32);
            if map[..n].iter().any(|&y| y >= off) || map[n..].iter().any(|&y| y < off) {
                return Err("product map mixes components".into());
            }
            check_structure(dl, cl, &map[..n])?;
            let right: Vec<u32> = map[n..].iter().map(|&y| y - off).collect();
            check_structure(dr, cr, &right)?;
            true
        }
        (Obj::Tagged(s, d), Obj::Tagged(t, c)) => {
            if s != t {
                return Err(format!("no morphisms between summands {s} and {t}"));
            }
            check_structure(d, c, map)?;
            true
        }
        _ => return Err(format!("kind mismatch: {} -> {}", dom.kind_tag(), cod.kind_tag())),
    };
    if ok {
        Ok(())
    } else {
        Err(format!("table does not preserve {} structure", dom.kind_tag()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(o: Obj) -> Arc<Obj> {
        Arc::new(o)
    }

    #[test]
    fn identity_is_a_unit() {
        let a = arc(Obj::set(2));
        let b = arc(Obj::set(3));
        let f = Morphism::new(a.clone(), b.clone(), vec![0, 2]).unwrap();
        assert_eq!(Morphism::compose(&Morphism::identity(&b), &f).unwrap(), f);
        assert_eq!(Morphism::compose(&f, &Morphism::identity(&a)).unwrap(), f);
    }

    #[test]
    fn mismatched_endpoints_do_not_compose() {
        let f = Morphism::identity(&arc(Obj::set(2)));
        let g = Morphism::identity(&arc(Obj::set(3)));
        assert!(matches!(Morphism::compose(&g, &f), Err(Error::Composition(_))));
    }

    #[test]
    fn graph_homs_must_send_edges_to_edges() {
        let e = arc(Obj::graph(2, &[(0, 1)]));
        let two = arc(Obj::graph(2, &[]));
        assert!(Morphism::new(e.clone(), two.clone(), vec![0, 1]).is_err());
        assert!(Morphism::new(two.clone(), e.clone(), vec![0, 1]).is_ok());
        let m = Morphism::new(two, e, vec![0, 1]).unwrap();
        assert!(m.is_injective() && !m.is_embedding());
    }

    #[test]
    fn nonlinear_table_is_rejected() {
        let v = arc(Obj::vec(2, 1));
        assert!(Morphism::new(v.clone(), v.clone(), vec![1, 0]).is_err());
        assert!(Morphism::new(v.clone(), v, vec![0, 1]).is_ok());
    }

    #[test]
    fn form_must_be_preserved() {
        let zero = arc(Obj::bil(2, 1, vec![0]));
        let one = arc(Obj::bil(2, 1, vec![1]));
        assert!(Morphism::new(zero.clone(), one.clone(), vec![0, 1]).is_err());
        assert!(Morphism::new(zero, one, vec![0, 0]).is_ok());
    }

    #[test]
    fn sigma_maps_commute_with_the_endomorphism() {
        let swap = arc(Obj::sigma_set(vec![1, 0]));
        let fixed = arc(Obj::sigma_set(vec![0]));
        assert!(Morphism::new(swap.clone(), fixed.clone(), vec![0, 0]).is_ok());
        assert!(Morphism::new(fixed, swap, vec![0]).is_err());
    }

    #[test]
    fn product_pair_and_split_roundtrip() {
        let f = Morphism::new(arc(Obj::set(1)), arc(Obj::set(2)), vec![1]).unwrap();
        let g = Morphism::identity(&arc(Obj::vec(2, 1)));
        let p = Morphism::pair(&f, &g);
        assert_eq!(p.map(), &[1, 2, 3]);
        assert_eq!(check_structure(p.dom(), p.cod(), p.map()), Ok(()));
        assert_eq!(p.split().unwrap(), (f, g));
    }
}
