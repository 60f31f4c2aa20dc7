//! 1/2/3-completions and independent horn amalgamation.
//!
//! A request is a diagram of dom objects (the preimages) together with one cod
//! object `T` receiving arrows `F(X) -> T`. A completion is a dom object `E`, dom
//! arrows `X -> E` and a cod arrow `h: T -> F(E)` making the mixed diagram commute.
//! For carrier-preserving functors the mixed diagram is glued directly in dom:
//! the glued apex is the canonical completion and a gluing obstruction certifies
//! that none exists. Otherwise, and when the glued apex leaves dom, a bounded
//! search over dom objects is run.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::lift::{sweep, ConcreteFunctor};
use crate::cat::{glue, Arrow, Diagram, Enumerator, GlueError, Gluing, Morphism, Obj, Obstruction, Shape};
use crate::indrel::{check_axiom, Axiom, Certificate, Relation, Scope, Tally, Verdict, Via};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub dim: u8,
    /// Dom-side preimages: `A`; the span `C, A, B`; or a horn.
    pub base: Diagram,
    pub target: Arc<Obj>,
    /// Arrows `F(X) -> target`, keyed by base label.
    pub into_target: Vec<(String, Vec<u32>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionResult {
    pub object: Arc<Obj>,
    /// Dom arrows `X -> object`, one per base node in base order.
    pub arrows: Vec<(String, Morphism)>,
    /// `h: target -> F(object)`.
    pub h: Morphism,
}

const HORN: [&str; 7] = ["M", "A", "B", "C", "N1", "N2", "N3"];
const HORN_EDGES: [(&str, &str); 9] = [
    ("M", "A"),
    ("M", "B"),
    ("M", "C"),
    ("A", "N1"),
    ("B", "N1"),
    ("A", "N2"),
    ("C", "N2"),
    ("B", "N3"),
    ("C", "N3"),
];
const HORN_FACES: [[&str; 4]; 3] = [["M", "A", "B", "N1"], ["M", "A", "C", "N2"], ["M", "B", "C", "N3"]];

fn labels_for(dim: u8) -> Result<(&'static [&'static str], &'static [&'static str], &'static str, &'static str)> {
    Ok(match dim {
        1 => (&["A"], &["A"], "B", "C"),
        2 => (&["C", "A", "B"], &["A", "B"], "D", "E"),
        3 => (&HORN, &["N1", "N2", "N3"], "N", "N*"),
        _ => return Err(Error::MalformedDiagram(format!("no {dim}-completions"))),
    })
}

impl CompletionRequest {
    /// `into_target` lists `(label, table)` for the arrows into the target; the
    /// labels expected are `A` (dim 1), `A, B` (dim 2) and `N1, N2, N3` (dim 3).
    pub fn new(dim: u8, base: Diagram, target: Obj, into_target: Vec<(&str, Vec<u32>)>) -> Result<CompletionRequest> {
        let (labels, sources, _, _) = labels_for(dim)?;
        if base.labels != labels {
            return Err(Error::MalformedDiagram(format!("a {dim}-completion request has base nodes {labels:?}")));
        }
        let mut got: Vec<&str> = into_target.iter().map(|(l, _)| *l).collect();
        got.sort_unstable();
        if got != sources {
            return Err(Error::MalformedDiagram(format!("a {dim}-completion request has arrows from {sources:?}")));
        }
        let into_target = into_target.into_iter().map(|(l, t)| (l.to_string(), t)).collect();
        Ok(CompletionRequest { dim, base, target: Arc::new(target), into_target })
    }

    pub fn target_label(&self) -> &'static str {
        labels_for(self.dim).map_or("T", |l| l.2)
    }
}

/// A completion problem in its general form: any base diagram and any set of
/// arrows into the target.
struct Problem<'a> {
    f: &'a ConcreteFunctor,
    base: &'a Diagram,
    target: &'a Arc<Obj>,
    target_label: &'a str,
    /// `(base index, F(X) -> target)`.
    legs: Vec<(usize, Morphism)>,
}

enum Found {
    Done(CompletionResult, Via),
    Impossible(Obstruction),
    Undecided,
}

impl<'a> Problem<'a> {
    fn new(
        f: &'a ConcreteFunctor,
        base: &'a Diagram,
        target: &'a Arc<Obj>,
        target_label: &'a str,
        into_target: &[(String, Vec<u32>)],
    ) -> Result<Problem<'a>> {
        let (dom, cod) = (f.dom(), f.cod());
        for o in &base.nodes {
            dom.check_object(o)?;
        }
        if let Some(a) = base.arrows.iter().find(|a| !f.dom_cls.contains(&a.map)) {
            return Err(Error::Contract(format!("base arrow {:?} is not in {}", a.map.map(), f.dom_cls.name())));
        }
        if !base.commutes() {
            return Err(Error::MalformedDiagram("base diagram does not commute".into()));
        }
        cod.check_object(target)?;
        let legs = into_target
            .iter()
            .map(|(l, t)| {
                let i = base.index(l)?;
                let m = Morphism::new(Arc::new(f.functor.obj(&base.nodes[i])?), target.clone(), t.clone())?;
                if !f.cod_cls.contains(&m) {
                    return Err(Error::Contract(format!("arrow {l} -> {target_label} is not in {}", f.cod_cls.name())));
                }
                Ok((i, m))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Problem { f, base, target, target_label, legs };
        if !p.cod_diagram()?.commutes() {
            return Err(Error::MalformedDiagram("request does not commute".into()));
        }
        Ok(p)
    }

    /// `F(base)` with the target and its incoming arrows appended.
    fn cod_diagram(&self) -> Result<Diagram> {
        let mut d = self.f.functor.diagram(self.base)?;
        let t = d.nodes.len();
        d.labels.push(self.target_label.into());
        d.nodes.push(self.target.clone());
        for (i, m) in &self.legs {
            let map = m.with_endpoints(d.nodes[*i].clone(), self.target.clone())?;
            d.arrows.push(Arrow { src: *i, dst: t, map });
        }
        Ok(d)
    }

    /// The request diagram extended by `F(object)` and the completion arrows.
    fn completed(&self, r: &CompletionResult, label: &str) -> Result<Diagram> {
        let mut d = self.cod_diagram()?;
        let (t, e) = (d.nodes.len() - 1, d.nodes.len());
        let fe = Arc::new(self.f.functor.obj(&r.object)?);
        d.labels.push(label.into());
        d.nodes.push(fe.clone());
        for (i, (_, m)) in r.arrows.iter().enumerate() {
            d.arrows.push(Arrow { src: i, dst: e, map: self.f.functor.mor(m)?.with_endpoints(d.nodes[i].clone(), fe.clone())? });
        }
        d.arrows.push(Arrow { src: t, dst: e, map: r.h.with_endpoints(self.target.clone(), fe)? });
        Ok(d)
    }

    /// Replays a candidate: classes, membership in dom, and commutativity.
    fn valid(&self, r: &CompletionResult) -> Result<bool> {
        let dom = self.f.dom();
        if !dom.contains(&r.object) || r.arrows.len() != self.base.nodes.len() {
            return Ok(false);
        }
        for (i, (_, m)) in r.arrows.iter().enumerate() {
            if m.dom() != &self.base.nodes[i] || m.cod() != &r.object || !self.f.dom_cls.contains(m) {
                return Ok(false);
            }
        }
        for a in &self.base.arrows {
            if Morphism::compose(&r.arrows[a.dst].1, &a.map)? != r.arrows[a.src].1 {
                return Ok(false);
            }
        }
        let fe = Arc::new(self.f.functor.obj(&r.object)?);
        if r.h.dom() != self.target || **r.h.cod() != *fe || !self.f.cod_cls.contains(&r.h) {
            return Ok(false);
        }
        for (i, leg) in &self.legs {
            if self.f.functor.mor(&r.arrows[*i].1)?.map() != Morphism::compose(&r.h, leg)?.map() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn result(&self, object: Arc<Obj>, tables: &[Vec<u32>]) -> Result<Option<CompletionResult>> {
        let n = self.base.nodes.len();
        let mut arrows = Vec::with_capacity(n);
        for (i, t) in tables[..n].iter().enumerate() {
            match Morphism::new(self.base.nodes[i].clone(), object.clone(), t.clone()) {
                Ok(m) => arrows.push((self.base.labels[i].clone(), m)),
                Err(_) => return Ok(None),
            }
        }
        let fe = Arc::new(self.f.functor.obj(&object)?);
        let Ok(h) = Morphism::new(self.target.clone(), fe, tables[n].clone()) else {
            return Ok(None);
        };
        let r = CompletionResult { object, arrows, h };
        Ok(self.valid(&r)?.then_some(r))
    }

    fn solve(&self, scope: &Scope) -> Result<Found> {
        if !self.f.functor.carrier_preserving() {
            return Err(Error::Capability(format!("{} changes carriers; mixed gluing is unavailable", self.f.name())));
        }
        let mut g = Gluing::from_diagram(self.base, self.f.dom_cls);
        let t = g.node(self.target_label, self.target.clone(), self.f.cod_cls);
        for (i, m) in &self.legs {
            g.arrow(*i, t, m.map());
        }
        match glue(&self.f.dom(), &g) {
            Ok(out) => {
                if let Some(r) = self.result(out.apex.clone(), &out.legs)? {
                    return Ok(Found::Done(r, Via::Canonical));
                }
            }
            Err(GlueError::Obstructed(o)) => return Ok(Found::Impossible(o)),
            Err(GlueError::Unresolved(_)) => {}
        }
        self.search(scope)
    }

    /// Backtracking over dom objects up to the completion bound. Nodes are assigned
    /// sinks first; a node with an outgoing arrow has its table forced.
    fn search(&self, scope: &Scope) -> Result<Found> {
        let n = self.base.nodes.len();
        let mut out_arrows: Vec<Vec<(usize, Vec<u32>)>> = vec![Vec::new(); n + 1];
        for a in &self.base.arrows {
            out_arrows[a.src].push((a.dst, a.map.map().to_vec()));
        }
        for (i, m) in &self.legs {
            out_arrows[*i].push((n, m.map().to_vec()));
        }
        let order = sinks_first(&out_arrows);
        let mut visited = 0;
        for x in self.f.dom().objects(scope.completion_size)? {
            let x = Arc::new(x);
            let fx = Arc::new(self.f.functor.obj(&x)?);
            let mut tables: Vec<Option<Vec<u32>>> = vec![None; n + 1];
            let mut found = None;
            self.assign(&order, 0, &x, &fx, &out_arrows, &mut tables, &mut visited, scope, &mut found)?;
            if let Some(r) = found {
                return Ok(Found::Done(r, Via::Search));
            }
            if visited >= scope.search_budget {
                break;
            }
        }
        Ok(Found::Undecided)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        order: &[usize],
        k: usize,
        x: &Arc<Obj>,
        fx: &Arc<Obj>,
        out_arrows: &[Vec<(usize, Vec<u32>)>],
        tables: &mut Vec<Option<Vec<u32>>>,
        visited: &mut usize,
        scope: &Scope,
        found: &mut Option<CompletionResult>,
    ) -> Result<()> {
        if found.is_some() || *visited >= scope.search_budget {
            return Ok(());
        }
        let n = self.base.nodes.len();
        if k == order.len() {
            *visited += 1;
            let full: Vec<Vec<u32>> = tables.iter().map(|t| t.clone().expect("assigned")).collect();
            *found = self.result(x.clone(), &full)?;
            return Ok(());
        }
        let i = order[k];
        let (src, cod, cls) = if i == n {
            (self.target, fx, self.f.cod_cls)
        } else {
            (&self.base.nodes[i], x, self.f.dom_cls)
        };
        let forced = out_arrows[i].iter().map(|(j, map)| {
            let tj = tables[*j].as_ref().expect("targets are assigned first");
            map.iter().map(|&y| tj[y as usize]).collect::<Vec<u32>>()
        });
        let candidates: Vec<Vec<u32>> = match forced.clone().next() {
            Some(first) => {
                if forced.skip(1).any(|t| t != first) {
                    return Ok(());
                }
                match Morphism::new(src.clone(), cod.clone(), first.clone()) {
                    Ok(m) if cls.contains(&m) => vec![first],
                    _ => return Ok(()),
                }
            }
            None => if i == n { self.f.cod() } else { self.f.dom() }.hom(src, cod, cls, scope.max_hom)?.into_iter().map(|m| m.map().to_vec()).collect(),
        };
        for t in candidates {
            tables[i] = Some(t);
            self.assign(order, k + 1, x, fx, out_arrows, tables, visited, scope, found)?;
            if found.is_some() {
                break;
            }
        }
        tables[i] = None;
        Ok(())
    }
}

/// Reverse topological order of the arrow graph `out`.
fn sinks_first(out: &[Vec<(usize, Vec<u32>)>]) -> Vec<usize> {
    let n = out.len();
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        for i in (0..n).rev() {
            if !done[i] && out[i].iter().all(|(j, _)| done[*j]) {
                done[i] = true;
                order.push(i);
            }
        }
    }
    order
}

fn independent_image(f: &ConcreteFunctor, rel: &Relation, d: &Diagram, face: [&str; 4]) -> Result<bool> {
    rel.decide(&f.functor.square(&d.square(face[0], face[1], face[2], face[3])?)?)
}

/// The squares of a request that must be independent: none for dim 1, the span
/// with the target for dim 2, all six faces of the cube for dim 3.
fn hypotheses_hold(f: &ConcreteFunctor, rel: &Relation, req: &CompletionRequest, cod: &Diagram) -> Result<bool> {
    match req.dim {
        1 => Ok(true),
        2 => rel.decide(&cod.square("C", "A", "B", "D")?),
        _ => {
            for face in HORN_FACES {
                if !independent_image(f, rel, &req.base, face)? {
                    return Ok(false);
                }
            }
            for face in [["A", "N1", "N2", "N"], ["B", "N1", "N3", "N"], ["C", "N2", "N3", "N"]] {
                if !rel.decide(&cod.square(face[0], face[1], face[2], face[3])?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn check_rel(f: &ConcreteFunctor, rel: &Relation) -> Result<()> {
    if rel.category != f.cod() || rel.cls != f.cod_cls {
        return Err(Error::Contract(format!("{} is not a relation on the codomain of {}", rel.name, f.name())));
    }
    Ok(())
}

fn solve_request(f: &ConcreteFunctor, rel: &Relation, req: &CompletionRequest, scope: &Scope) -> Result<(Diagram, Found)> {
    let p = Problem::new(f, &req.base, &req.target, req.target_label(), &req.into_target)?;
    let cod = p.cod_diagram()?;
    if !hypotheses_hold(f, rel, req, &cod)? {
        return Err(Error::Contract(format!("the {}-completion request is not {}-independent", req.dim, rel.name)));
    }
    Ok((cod, p.solve(scope)?))
}

/// Finds a completion for `req`; `fails` only with a gluing obstruction.
pub fn find_completion(
    f: &ConcreteFunctor,
    rel: &Relation,
    req: &CompletionRequest,
    scope: &Scope,
) -> Result<(Verdict, Option<CompletionResult>)> {
    scope.validate()?;
    check_rel(f, rel)?;
    let (cod, found) = solve_request(f, rel, req, scope)?;
    let mut tally = Tally::new();
    tally.timing.diagrams = 1;
    let result = match found {
        Found::Done(r, via) => {
            match via {
                Via::Search => tally.timing.searched += 1,
                _ => tally.timing.canonical += 1,
            }
            let p = Problem::new(f, &req.base, &req.target, req.target_label(), &req.into_target)?;
            tally.holds(&p.completed(&r, labels_for(req.dim)?.3)?);
            Some(r)
        }
        Found::Impossible(o) => {
            tally.violated(&cod, Certificate::Impossible { obstruction: o });
            None
        }
        Found::Undecided => {
            tally.undecided(&cod);
            None
        }
    };
    let axiom = format!("{}-completion", req.dim);
    Ok((tally.verdict(&format!("{}({})", f.name(), rel.name), &axiom, scope, None), result))
}

/// Degenerate 2-request whose completions are exactly the 1-completions of `f`.
fn one_as_two(a: &Arc<Obj>, b: &Arc<Obj>, f: &[u32]) -> Result<CompletionRequest> {
    let id: Vec<u32> = (0..a.card() as u32).collect();
    let base = Diagram::build(
        vec![("C", (**a).clone()), ("A", (**a).clone()), ("B", (**a).clone())],
        vec![("C", "A", id.clone()), ("C", "B", id)],
    )?;
    CompletionRequest::new(2, base, (**b).clone(), vec![("A", f.to_vec()), ("B", f.to_vec())])
}

/// Degenerate cube over a 2-request: `M, A, B, C` collapse to the span's base
/// and `N1, N2, N3` are `A, B` and the base itself.
fn two_as_three(req: &CompletionRequest) -> Result<CompletionRequest> {
    let c = req.base.node("C").expect("span").clone();
    let (ca, cb) = (req.base.arrow("C", "A")?.map().to_vec(), req.base.arrow("C", "B")?.map().to_vec());
    let id: Vec<u32> = (0..c.card() as u32).collect();
    let (a, b) = (req.base.node("A").expect("span"), req.base.node("B").expect("span"));
    let base = Diagram::build(
        vec![
            ("M", (*c).clone()),
            ("A", (*c).clone()),
            ("B", (*c).clone()),
            ("C", (*c).clone()),
            ("N1", (**a).clone()),
            ("N2", (**b).clone()),
            ("N3", (*c).clone()),
        ],
        vec![
            ("M", "A", id.clone()),
            ("M", "B", id.clone()),
            ("M", "C", id.clone()),
            ("A", "N1", ca.clone()),
            ("B", "N1", ca),
            ("A", "N2", cb.clone()),
            ("C", "N2", cb),
            ("B", "N3", id.clone()),
            ("C", "N3", id),
        ],
    )?;
    let leg = |l: &str| req.into_target.iter().find(|(x, _)| x == l).expect("span legs").1.clone();
    let (ad, bd) = (leg("A"), leg("B"));
    let cd: Vec<u32> = req.base.arrow("C", "A")?.map().iter().map(|&x| ad[x as usize]).collect();
    CompletionRequest::new(3, base, (*req.target).clone(), vec![("N1", ad), ("N2", bd), ("N3", cd)])
}

/// Reads the lower-dimensional completion off a degenerate one.
fn project(r: &CompletionResult, labels: &[(&str, &str)]) -> CompletionResult {
    let arrows = labels
        .iter()
        .map(|(to, from)| {
            let m = r.arrows.iter().find(|(l, _)| l == from).expect("known label").1.clone();
            (to.to_string(), m)
        })
        .collect();
    CompletionResult { object: r.object.clone(), arrows, h: r.h.clone() }
}

/// Identity insertion: every discharged degenerate 2-request yields a
/// 1-completion, every discharged degenerate 3-request a 2-completion, and an
/// impossible lower request never has a discharged degenerate one.
pub fn completion_implication_check(f: &ConcreteFunctor, rel: &Relation, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    check_rel(f, rel)?;
    let name = format!("{}({})", f.name(), rel.name);
    let axiom = "completion-implication";
    let be = check_axiom(rel, Axiom::BasicExistence, scope)?;
    if !be.holds() {
        let mut v = Tally::new().verdict(&name, axiom, scope, None);
        v.status = crate::indrel::Status::Inconclusive;
        v.note = Some(format!("skipped: {} does not satisfy basic existence within scope", rel.name));
        return Ok(v);
    }
    let (dom, cod) = (f.dom(), f.cod());
    let mut tally = Tally::new();
    for a in dom.objects(scope.max_size)? {
        let a = Arc::new(a);
        let fa = Arc::new(f.functor.obj(&a)?);
        for b in cod.objects(scope.max_size)? {
            let b = Arc::new(b);
            for m in cod.hom(&fa, &b, f.cod_cls, scope.max_hom)? {
                tally.timing.diagrams += 1;
                let one = CompletionRequest::new(1, Diagram::build(vec![("A", (*a).clone())], vec![])?, (*b).clone(), vec![("A", m.map().to_vec())])?;
                let two = one_as_two(&a, &b, m.map())?;
                implication_step(f, rel, &one, &two, &[("A", "A")], scope, &mut tally)?;
            }
        }
    }
    let span = Shape::new(&["C", "A", "B"], &[("C", "A"), ("C", "B")]);
    let square = Shape::new(&["C", "A", "B", "D"], &[("C", "A"), ("C", "B"), ("A", "D"), ("B", "D")]);
    let mut spans = Vec::new();
    sweep(&dom, span, f.dom_cls, scope, &mut tally, |d, _| {
        spans.push(d.clone());
        Ok(())
    })?;
    for s in spans {
        let image = f.functor.diagram(&s)?;
        let mut cods = Vec::new();
        let mut err = None;
        Enumerator::new(&cod, square.clone(), f.cod_cls, scope.max_size).hom_cap(scope.max_hom).prefix(image).run(|d| {
            match d.square("C", "A", "B", "D").and_then(|sq| rel.decide(&sq)) {
                Ok(true) => cods.push(d.clone()),
                Ok(false) => {}
                Err(e) => {
                    err = Some(e);
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        for d in cods {
            tally.timing.diagrams += 1;
            let legs = vec![("A", d.arrow("A", "D")?.map().to_vec()), ("B", d.arrow("B", "D")?.map().to_vec())];
            let two = CompletionRequest::new(2, s.clone(), (**d.node("D").expect("apex")).clone(), legs)?;
            let three = two_as_three(&two)?;
            implication_step(f, rel, &two, &three, &[("C", "M"), ("A", "N1"), ("B", "N2")], scope, &mut tally)?;
        }
    }
    Ok(tally.verdict(&name, axiom, scope, Some("identity insertion: dim 2 to dim 1 and dim 3 to dim 2".into())))
}

fn implication_step(
    f: &ConcreteFunctor,
    rel: &Relation,
    lower: &CompletionRequest,
    upper: &CompletionRequest,
    labels: &[(&str, &str)],
    scope: &Scope,
    tally: &mut Tally,
) -> Result<()> {
    let (cod, low) = solve_request(f, rel, lower, scope)?;
    let (_, high) = solve_request(f, rel, upper, scope)?;
    let Found::Done(r, _) = high else {
        return Ok(());
    };
    let p = Problem::new(f, &lower.base, &lower.target, lower.target_label(), &lower.into_target)?;
    let derived = project(&r, labels);
    if let Found::Impossible(_) = low {
        tally.violated(&cod, Certificate::Violation { condition: format!("the degenerate {}-request is discharged but the {}-request is impossible", upper.dim, lower.dim) });
    } else if p.valid(&derived)? {
        tally.holds(&p.completed(&derived, labels_for(lower.dim)?.3)?);
    } else {
        tally.violated(&cod, Certificate::Violation { condition: format!("the {}-completion does not restrict to a {}-completion", upper.dim, lower.dim) });
    }
    Ok(())
}

/// Solve one request into `tally`; requests larger than the current
/// counterexample are skipped.
fn discharge(f: &ConcreteFunctor, dim: u8, base: &Diagram, target: &Arc<Obj>, into: &[(String, Vec<u32>)], scope: &Scope, tally: &mut Tally) -> Result<()> {
    let (_, _, label, completion) = labels_for(dim)?;
    let p = Problem::new(f, base, target, label, into)?;
    let cod_d = p.cod_diagram()?;
    if cod_d.total_size() > tally.size_bound() {
        return Ok(());
    }
    match p.solve(scope)? {
        Found::Done(r, via) => {
            match via {
                Via::Search => tally.timing.searched += 1,
                _ => tally.timing.canonical += 1,
            }
            tally.holds(&p.completed(&r, completion)?);
        }
        Found::Impossible(o) => tally.violated(&cod_d, Certificate::Impossible { obstruction: o }),
        Found::Undecided => tally.undecided(&cod_d),
    }
    Ok(())
}

/// Horns in dom whose three faces have independent images.
fn independent_horns(f: &ConcreteFunctor, rel: &Relation, scope: &Scope, tally: &mut Tally) -> Result<Vec<Diagram>> {
    let mut horns = Vec::new();
    let stats = Enumerator::new(&f.dom(), Shape::new(&HORN, &HORN_EDGES), f.dom_cls, scope.max_size)
        .hom_cap(scope.max_hom)
        .prune(|p| {
            let k = p.nodes.len();
            if k < 5 {
                return true;
            }
            independent_image(f, rel, p, HORN_FACES[k - 5]).unwrap_or(true)
        })
        .run(|d| {
            horns.push(d.clone());
            ControlFlow::Continue(())
        })?;
    tally.timing.diagrams += stats.diagrams;
    Ok(horns)
}

/// Extensions of `prefix` in cod along `shape` whose `faces` are all independent.
fn independent_extensions(f: &ConcreteFunctor, rel: &Relation, shape: Shape, prefix: Diagram, faces: &[[&str; 4]], scope: &Scope) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    let mut err = None;
    Enumerator::new(&f.cod(), shape, f.cod_cls, scope.max_size).hom_cap(scope.max_hom).prefix(prefix).run(|d| {
        let keep = faces.iter().try_fold(true, |acc, face| {
            Ok::<_, Error>(acc && rel.decide(&d.square(face[0], face[1], face[2], face[3])?)?)
        });
        match keep {
            Ok(true) => out.push(d.clone()),
            Ok(false) => {}
            Err(e) => {
                err = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    err.map_or(Ok(out), Err)
}

fn legs(d: &Diagram, sources: &[&str], target: &str) -> Result<Vec<(String, Vec<u32>)>> {
    sources.iter().map(|s| Ok((s.to_string(), d.arrow(s, target)?.map().to_vec()))).collect()
}

/// Independent horn amalgamation in its single-diagram form: for every horn in
/// dom with independent image faces and every independent square
/// `(F M; F A, F N3; N)`, find `N*`, `n1, n2, n3` and `h: N -> F(N*)`.
pub fn check_horn_amalgamation(f: &ConcreteFunctor, rel: &Relation, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    check_rel(f, rel)?;
    let mut tally = Tally::new();
    let horns = independent_horns(f, rel, scope, &mut tally)?;
    let ext = Shape::new(&["M", "A", "N3", "N"], &[("M", "A"), ("M", "N3"), ("A", "N"), ("N3", "N")]);
    for h in horns {
        let fh = f.functor.diagram(&h)?;
        let (m, a, n3) = (fh.node("M").expect("horn"), fh.node("A").expect("horn"), fh.node("N3").expect("horn"));
        let prefix = Diagram {
            labels: vec!["M".into(), "A".into(), "N3".into()],
            nodes: vec![m.clone(), a.clone(), n3.clone()],
            arrows: vec![Arrow { src: 0, dst: 1, map: fh.arrow("M", "A")?.clone() }, Arrow { src: 0, dst: 2, map: fh.path("M", "N3")? }],
        };
        for s in independent_extensions(f, rel, ext.clone(), prefix, &[["M", "A", "N3", "N"]], scope)? {
            tally.timing.diagrams += 1;
            let target = s.node("N").expect("apex").clone();
            discharge(f, 3, &h, &target, &legs(&s, &["A", "N3"], "N")?, scope, &mut tally)?;
        }
    }
    let note = "single-diagram form; equivalent to horn amalgamation when the domain has amalgamation".to_string();
    Ok(tally.verdict(&format!("{}({})", f.name(), rel.name), "horn-amalgamation", scope, Some(note)))
}

/// Whether `f` admits `dim`-completions: every request within scope whose
/// hypotheses hold is solved.
pub fn admits_completions_check(f: &ConcreteFunctor, rel: &Relation, dim: u8, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    check_rel(f, rel)?;
    let (base_labels, sources, target, _) = labels_for(dim)?;
    let (dom, cod) = (f.dom(), f.cod());
    let mut tally = Tally::new();
    match dim {
        1 => {
            for a in dom.objects(scope.max_size)? {
                let a = Diagram::build(vec![("A", a)], vec![])?;
                let fa = f.functor.obj(a.node("A").expect("node"))?;
                for b in cod.objects(scope.max_size)? {
                    let (fa, b) = (Arc::new(fa.clone()), Arc::new(b));
                    for m in cod.hom(&fa, &b, f.cod_cls, scope.max_hom)? {
                        tally.timing.diagrams += 1;
                        discharge(f, 1, &a, &b, &[("A".into(), m.map().to_vec())], scope, &mut tally)?;
                    }
                }
            }
        }
        2 => {
            let mut spans = Vec::new();
            sweep(&dom, Shape::new(base_labels, &[("C", "A"), ("C", "B")]), f.dom_cls, scope, &mut tally, |d, _| {
                spans.push(d.clone());
                Ok(())
            })?;
            let square = Shape::new(&["C", "A", "B", "D"], &[("C", "A"), ("C", "B"), ("A", "D"), ("B", "D")]);
            for s in spans {
                for d in independent_extensions(f, rel, square.clone(), f.functor.diagram(&s)?, &[["C", "A", "B", "D"]], scope)? {
                    tally.timing.diagrams += 1;
                    discharge(f, 2, &s, d.node("D").expect("apex"), &legs(&d, sources, target)?, scope, &mut tally)?;
                }
            }
        }
        _ => {
            let mut labels = HORN.to_vec();
            labels.push("N");
            let mut edges = HORN_EDGES.to_vec();
            edges.extend([("N1", "N"), ("N2", "N"), ("N3", "N")]);
            let cube = Shape::new(&labels, &edges);
            let top = [["A", "N1", "N2", "N"], ["B", "N1", "N3", "N"], ["C", "N2", "N3", "N"]];
            for h in independent_horns(f, rel, scope, &mut tally)? {
                for d in independent_extensions(f, rel, cube.clone(), f.functor.diagram(&h)?, &top, scope)? {
                    tally.timing.diagrams += 1;
                    discharge(f, 3, &h, d.node("N").expect("apex"), &legs(&d, sources, target)?, scope, &mut tally)?;
                }
            }
        }
    }
    Ok(tally.verdict(&format!("{}({})", f.name(), rel.name), &format!("admits-{dim}-completions"), scope, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{Category, MorphismClass};
    use crate::indrel::{pullback_relation, RelKind, Status};
    use crate::lifting::Functor;

    fn graph_to_set() -> ConcreteFunctor {
        ConcreteFunctor::new(Functor::GraphToSet, MorphismClass::Emb, MorphismClass::Mono)
    }

    fn set_identity(cls: MorphismClass) -> ConcreteFunctor {
        ConcreteFunctor::new(Functor::Identity(Category::FinSet), cls, cls)
    }

    #[test]
    fn forms_extend_by_zero_off_the_subspace() {
        let f = ConcreteFunctor::new(Functor::BilToVec(2), MorphismClass::Mono, MorphismClass::Mono);
        let rel = Relation::new("lin", Category::FinVec(2), MorphismClass::Mono, RelKind::Intersection);
        let base = Diagram::build(vec![("A", Obj::bil(2, 1, vec![1]))], vec![]).unwrap();
        let req = CompletionRequest::new(1, base, Obj::vec(2, 2), vec![("A", vec![0, 1])]).unwrap();
        let (v, r) = find_completion(&f, &rel, &req, &Scope::new(2, 2)).unwrap();
        assert!(v.holds(), "{}", v.to_json());
        assert_eq!(*r.unwrap().object, Obj::bil(2, 2, vec![1, 0, 0, 0]));
        assert_eq!(v.timing.canonical, 1);
    }

    #[test]
    fn swapped_sigma_graphs_have_no_two_completion() {
        let f = ConcreteFunctor::new(Functor::SigmaGraphToGraph, MorphismClass::Emb, MorphismClass::Emb);
        let rel = pullback_relation(&Category::FinGraph, MorphismClass::Emb).unwrap();
        let swap = Obj::sigma_graph(&[], vec![1, 0]);
        let base = Diagram::build(
            vec![("C", Obj::sigma_graph(&[], vec![])), ("A", swap.clone()), ("B", swap)],
            vec![("C", "A", vec![]), ("C", "B", vec![])],
        )
        .unwrap();
        let d = Obj::graph(4, &[(0, 2)]);
        let req = CompletionRequest::new(2, base, d, vec![("A", vec![0, 1]), ("B", vec![2, 3])]).unwrap();
        let (v, r) = find_completion(&f, &rel, &req, &Scope::new(4, 4)).unwrap();
        assert!(v.fails() && r.is_none());
        assert!(v.to_json().contains("endomorphism-consistency"), "{}", v.to_json());
    }

    #[test]
    fn identity_completes_with_the_square_apex() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let base = Diagram::build(
            vec![("C", Obj::set(1)), ("A", Obj::set(2)), ("B", Obj::set(2))],
            vec![("C", "A", vec![0]), ("C", "B", vec![0])],
        )
        .unwrap();
        let req = CompletionRequest::new(2, base, Obj::set(3), vec![("A", vec![0, 1]), ("B", vec![0, 2])]).unwrap();
        let (v, r) = find_completion(&set_identity(MorphismClass::Mono), &rel, &req, &Scope::new(3, 3)).unwrap();
        assert!(v.holds());
        assert_eq!(*r.unwrap().object, Obj::set(3));
    }

    #[test]
    fn dependent_requests_are_rejected() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let base = Diagram::build(
            vec![("C", Obj::set(0)), ("A", Obj::set(1)), ("B", Obj::set(1))],
            vec![("C", "A", vec![]), ("C", "B", vec![])],
        )
        .unwrap();
        let req = CompletionRequest::new(2, base, Obj::set(1), vec![("A", vec![0]), ("B", vec![0])]).unwrap();
        let out = find_completion(&set_identity(MorphismClass::Mono), &rel, &req, &Scope::new(2, 2));
        assert!(matches!(out, Err(Error::Contract(_))));
    }

    #[test]
    fn identity_insertion_for_the_identity_functor() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let v = completion_implication_check(&set_identity(MorphismClass::Mono), &rel, &Scope::new(2, 3)).unwrap();
        assert!(v.holds(), "{}", v.to_json());
        assert!(v.timing.obligations > 0);
    }

    #[test]
    fn implication_is_skipped_without_basic_existence() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::All).unwrap();
        let v = completion_implication_check(&set_identity(MorphismClass::All), &rel, &Scope::new(2, 2)).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(v.note.unwrap().starts_with("skipped"));
    }

    #[test]
    fn graph_horns_amalgamate_by_copying_edges() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let v = check_horn_amalgamation(&graph_to_set(), &rel, &Scope::new(2, 4)).unwrap();
        assert!(v.holds(), "{}", v.to_json());
        assert!(v.timing.obligations > 0);
    }

    #[test]
    fn graphs_admit_completions_over_sets() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        for dim in [1, 2] {
            let v = admits_completions_check(&graph_to_set(), &rel, dim, &Scope::new(2, 4)).unwrap();
            assert!(v.holds(), "{}", v.to_json());
            assert!(v.timing.obligations > 0);
        }
    }

    #[test]
    fn sigma_graphs_do_not_admit_two_completions() {
        let f = ConcreteFunctor::new(Functor::SigmaGraphToGraph, MorphismClass::Emb, MorphismClass::Emb);
        let rel = pullback_relation(&Category::FinGraph, MorphismClass::Emb).unwrap();
        let v = admits_completions_check(&f, &rel, 2, &Scope::new(4, 3)).unwrap();
        assert!(v.fails(), "{}", v.to_json());
        assert!(v.to_json().contains("endomorphism-consistency"));
    }

    #[test]
    fn the_identity_admits_three_completions() {
        let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap();
        let v = admits_completions_check(&set_identity(MorphismClass::Mono), &rel, 3, &Scope::new(2, 3)).unwrap();
        assert!(v.holds(), "{}", v.to_json());
        assert!(v.timing.obligations > 0);
        assert!(admits_completions_check(&set_identity(MorphismClass::Mono), &rel, 4, &Scope::new(2, 3)).is_err());
    }
}
