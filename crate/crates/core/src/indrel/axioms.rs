//! Bounded and exact checkers for the axioms of an independence relation.
//!
//! Every axiom is a family of obligations, one per commuting diagram of a fixed
//! shape whose hypothesis squares are independent. Universal axioms evaluate a
//! conclusion on the diagram itself. Existential axioms extend the diagram by new
//! nodes: first with a canonical candidate (a colimit, or a generated subobject),
//! then by a bounded search. A failed gluing is an impossibility certificate; an
//! exhausted search is not.

use std::cell::{Cell, OnceCell};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::relation::{RelKind, Relation};
use super::verdict::{Certificate, Scope, Status, Tally, Timing, Verdict};
use crate::cat::{
    generated, glue, Arrow, Category, Diagram, Enumerator, FactorizationSystem, GlueError, Gluing, Morphism,
    MorphismClass, NodeDomain, Obj, Shape, Square,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "invariance")]
    Invariance,
    #[serde(rename = "semi-invariance")]
    SemiInvariance,
    #[serde(rename = "monotonicity")]
    Monotonicity,
    #[serde(rename = "transitivity")]
    Transitivity,
    #[serde(rename = "symmetry")]
    Symmetry,
    #[serde(rename = "basic-existence")]
    BasicExistence,
    #[serde(rename = "existence")]
    Existence,
    #[serde(rename = "base-monotonicity")]
    BaseMonotonicity,
    #[serde(rename = "uniqueness")]
    Uniqueness,
    #[serde(rename = "3-amalgamation")]
    ThreeAmalgamation,
    #[serde(rename = "strong-3-amalgamation")]
    StrongThreeAmalgamation,
    #[serde(rename = "union-finite-chain")]
    UnionFiniteChain,
}

impl Axiom {
    pub const ALL: [Axiom; 12] = [
        Axiom::Invariance,
        Axiom::SemiInvariance,
        Axiom::Monotonicity,
        Axiom::Transitivity,
        Axiom::Symmetry,
        Axiom::BasicExistence,
        Axiom::Existence,
        Axiom::BaseMonotonicity,
        Axiom::Uniqueness,
        Axiom::ThreeAmalgamation,
        Axiom::StrongThreeAmalgamation,
        Axiom::UnionFiniteChain,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Invariance => "invariance",
            Axiom::SemiInvariance => "semi-invariance",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Transitivity => "transitivity",
            Axiom::Symmetry => "symmetry",
            Axiom::BasicExistence => "basic-existence",
            Axiom::Existence => "existence",
            Axiom::BaseMonotonicity => "base-monotonicity",
            Axiom::Uniqueness => "uniqueness",
            Axiom::ThreeAmalgamation => "3-amalgamation",
            Axiom::StrongThreeAmalgamation => "strong-3-amalgamation",
            Axiom::UnionFiniteChain => "union-finite-chain",
        }
    }

    pub fn is_existential(self) -> bool {
        matches!(
            self,
            Axiom::Existence
                | Axiom::BaseMonotonicity
                | Axiom::Uniqueness
                | Axiom::ThreeAmalgamation
                | Axiom::StrongThreeAmalgamation
        )
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.tag() == s).ok_or_else(|| Error::Unknown(format!("axiom `{s}`")))
    }
}

/// Chain lengths checked by the finite-chain proxy for union.
pub const UNION_CHAIN_LENGTHS: [usize; 2] = [3, 4];

/// How an obligation was discharged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Direct,
    Canonical,
    Search,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// A hypothesis fails, so there is nothing to check.
    Vacuous,
    /// For existential axioms `completion` is the extended diagram.
    Holds { completion: Option<Diagram>, via: Via },
    Violated(Certificate),
    Undecided,
}

type Sq = [String; 4];

fn sq(labels: [&str; 4]) -> Sq {
    labels.map(str::to_string)
}

/// Labels and edges of a shape, owned.
struct ShapeSpec {
    labels: Vec<String>,
    edges: Vec<(String, String)>,
}

impl ShapeSpec {
    fn new(labels: &[&str], edges: &[(&str, &str)]) -> ShapeSpec {
        ShapeSpec {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            edges: edges.iter().map(|(s, d)| (s.to_string(), d.to_string())).collect(),
        }
    }

    fn extended(&self, labels: &[&str], edges: &[(&str, &str)]) -> ShapeSpec {
        let mut out = ShapeSpec { labels: self.labels.clone(), edges: self.edges.clone() };
        out.labels.extend(labels.iter().map(|s| s.to_string()));
        out.edges.extend(edges.iter().map(|(s, d)| (s.to_string(), d.to_string())));
        out
    }

    fn shape(&self) -> Shape {
        let labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|(s, d)| (s.as_str(), d.as_str())).collect();
        Shape::new(&labels, &edges)
    }
}

enum Canonical {
    /// The colimit of the obligation; the apex receives legs from `sources`.
    Colimit { sources: Vec<&'static str> },
    /// Base monotonicity: `A'` generated by the images of `A` and `B` in `M`, `N = M`.
    Generated,
}

struct Completion {
    shape: ShapeSpec,
    conditions: Vec<Sq>,
    canonical: Canonical,
}

/// One obligation family of an axiom.
struct Plan {
    shape: ShapeSpec,
    /// Squares that must be independent for the obligation to be non-vacuous.
    hypotheses: Vec<Sq>,
    completion: Option<Completion>,
}

const SQUARE: [&str; 4] = ["C", "A", "B", "M"];
const SQUARE_EDGES: [(&str, &str); 4] = [("C", "A"), ("C", "B"), ("A", "M"), ("B", "M")];

fn horn() -> ShapeSpec {
    ShapeSpec::new(
        &["M", "A", "B", "C", "N1", "N2", "N3"],
        &[
            ("M", "A"),
            ("M", "B"),
            ("M", "C"),
            ("A", "N1"),
            ("B", "N1"),
            ("A", "N2"),
            ("C", "N2"),
            ("B", "N3"),
            ("C", "N3"),
        ],
    )
}

fn union_chain(len: usize) -> ShapeSpec {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for i in 0..len {
        labels.push(format!("C{i}"));
        labels.push(format!("A{i}"));
        edges.push((format!("C{i}"), format!("A{i}")));
        if i > 0 {
            edges.push((format!("C{}", i - 1), format!("C{i}")));
            edges.push((format!("A{}", i - 1), format!("A{i}")));
        }
    }
    edges.sort_by_key(|(s, d)| (labels.iter().position(|l| l == d), labels.iter().position(|l| l == s)));
    ShapeSpec { labels, edges }
}

fn plans(axiom: Axiom) -> Vec<Plan> {
    let square = ShapeSpec::new(&SQUARE, &SQUARE_EDGES);
    let base = sq(SQUARE);
    let plan = |shape, hypotheses| Plan { shape, hypotheses, completion: None };
    match axiom {
        Axiom::Invariance => {
            vec![plan(square.extended(&["N"], &[("M", "N")]), vec![])]
        }
        Axiom::SemiInvariance => vec![plan(
            ShapeSpec::new(&["C", "A", "B", "D", "E"], &[("C", "A"), ("C", "B"), ("A", "D"), ("B", "D"), ("D", "E")]),
            vec![],
        )],
        Axiom::Monotonicity => vec![plan(
            ShapeSpec::new(&["C", "A", "B'", "B", "M"], &[("C", "A"), ("C", "B'"), ("B'", "B"), ("A", "M"), ("B", "M")]),
            vec![],
        )],
        Axiom::Transitivity => vec![plan(
            square.extended(&["D", "N"], &[("B", "D"), ("M", "N"), ("D", "N")]),
            vec![base, sq(["B", "M", "D", "N"])],
        )],
        Axiom::Symmetry | Axiom::BasicExistence => vec![plan(square, vec![])],
        Axiom::Existence => {
            let shape = ShapeSpec::new(&["C", "A", "B"], &[("C", "A"), ("C", "B")]);
            let completion = Completion {
                shape: shape.extended(&["M"], &[("A", "M"), ("B", "M")]),
                conditions: vec![base],
                canonical: Canonical::Colimit { sources: vec!["A", "B"] },
            };
            vec![Plan { shape, hypotheses: vec![], completion: Some(completion) }]
        }
        Axiom::BaseMonotonicity => {
            let shape = ShapeSpec::new(
                &["C", "A", "B", "D", "M"],
                &[("C", "A"), ("C", "B"), ("B", "D"), ("A", "M"), ("D", "M")],
            );
            let completion = Completion {
                shape: shape.extended(&["A'", "N"], &[("A", "A'"), ("B", "A'"), ("A'", "N"), ("M", "N")]),
                conditions: vec![sq(["B", "A'", "D", "N"])],
                canonical: Canonical::Generated,
            };
            vec![Plan { shape, hypotheses: vec![sq(["C", "A", "D", "M"])], completion: Some(completion) }]
        }
        Axiom::Uniqueness => {
            let shape = square.extended(&["M'"], &[("A", "M'"), ("B", "M'")]);
            let completion = Completion {
                shape: shape.extended(&["N"], &[("M", "N"), ("M'", "N")]),
                conditions: vec![],
                canonical: Canonical::Colimit { sources: vec!["M", "M'"] },
            };
            vec![Plan { shape, hypotheses: vec![base, sq(["C", "A", "B", "M'"])], completion: Some(completion) }]
        }
        Axiom::ThreeAmalgamation | Axiom::StrongThreeAmalgamation => {
            let shape = horn();
            let conditions = if axiom == Axiom::ThreeAmalgamation {
                vec![sq(["M", "A", "N3", "N"])]
            } else {
                vec![sq(["A", "N1", "N2", "N"]), sq(["B", "N1", "N3", "N"]), sq(["C", "N2", "N3", "N"])]
            };
            let completion = Completion {
                shape: shape.extended(&["N"], &[("N1", "N"), ("N2", "N"), ("N3", "N")]),
                conditions,
                canonical: Canonical::Colimit { sources: vec!["N1", "N2", "N3"] },
            };
            let hypotheses = vec![sq(["M", "A", "B", "N1"]), sq(["M", "A", "C", "N2"]), sq(["M", "B", "C", "N3"])];
            vec![Plan { shape, hypotheses, completion: Some(completion) }]
        }
        Axiom::UnionFiniteChain => UNION_CHAIN_LENGTHS
            .iter()
            .map(|&len| {
                let hypotheses = (1..len)
                    .map(|i| {
                        [format!("C{}", i - 1), format!("A{}", i - 1), format!("C{i}"), format!("A{i}")]
                    })
                    .collect();
                plan(union_chain(len), hypotheses)
            })
            .collect(),
    }
}

/// The plan whose shape matches `d`.
fn plan_for(axiom: Axiom, d: &Diagram) -> Result<Plan> {
    plans(axiom)
        .into_iter()
        .find(|p| p.shape.labels == d.labels)
        .ok_or_else(|| Error::MalformedDiagram(format!("diagram does not have the shape of a {axiom} obligation")))
}

fn square_of(d: &Diagram, s: &Sq) -> Result<Square> {
    d.square(&s[0], &s[1], &s[2], &s[3])
}

fn independent(rel: &Relation, d: &Diagram, s: &Sq) -> Result<bool> {
    rel.decide(&square_of(d, s)?)
}

/// Shared state of one check.
struct Ctx<'a> {
    rel: &'a Relation,
    scope: &'a Scope,
    pool: OnceCell<Vec<Obj>>,
}

impl<'a> Ctx<'a> {
    fn new(rel: &'a Relation, scope: &'a Scope) -> Ctx<'a> {
        Ctx { rel, scope, pool: OnceCell::new() }
    }

    fn pool(&self) -> Result<&Vec<Obj>> {
        if let Some(p) = self.pool.get() {
            return Ok(p);
        }
        let objs = self.rel.category.objects(self.scope.completion_size)?;
        Ok(self.pool.get_or_init(|| objs))
    }

    /// `pruned` means the enumerator already rejected diagrams with a dependent hypothesis.
    fn evaluate(&self, axiom: Axiom, plan: &Plan, d: &Diagram, pruned: bool) -> Result<Outcome> {
        let rel = self.rel;
        for h in plan.hypotheses.iter().filter(|_| !pruned) {
            if !independent(rel, d, h)? {
                return Ok(Outcome::Vacuous);
            }
        }
        let violated = |condition: &str| Ok(Outcome::Violated(Certificate::Violation { condition: condition.into() }));
        let holds = Ok(Outcome::Holds { completion: None, via: Via::Direct });
        match axiom {
            Axiom::Invariance => {
                let inner = independent(rel, d, &sq(SQUARE))?;
                let outer = independent(rel, d, &sq(["C", "A", "B", "N"]))?;
                match (inner, outer) {
                    (true, false) => violated("(C;A,B;M) is independent but (C;A,B;N) is not"),
                    (false, true) => violated("(C;A,B;N) is independent but (C;A,B;M) is not"),
                    _ => holds,
                }
            }
            Axiom::SemiInvariance => {
                let outer = independent(rel, d, &sq(["C", "A", "B", "E"]))?;
                if outer && !independent(rel, d, &sq(["C", "A", "B", "D"]))? {
                    violated("(C;A,B;E) is independent but (C;A,B;D) is not")
                } else if outer {
                    holds
                } else {
                    Ok(Outcome::Vacuous)
                }
            }
            Axiom::Monotonicity => {
                if !independent(rel, d, &sq(SQUARE))? {
                    Ok(Outcome::Vacuous)
                } else if !independent(rel, d, &sq(["C", "A", "B'", "M"]))? {
                    violated("(C;A,B;M) is independent but (C;A,B';M) is not")
                } else {
                    holds
                }
            }
            Axiom::Transitivity => {
                if independent(rel, d, &sq(["C", "A", "D", "N"]))? {
                    holds
                } else {
                    violated("(C;A,B;M) and (B;M,D;N) are independent but (C;A,D;N) is not")
                }
            }
            Axiom::Symmetry => {
                let s = square_of(d, &sq(SQUARE))?;
                match (rel.decide(&s)?, rel.decide(&s.transpose())?) {
                    (true, false) => violated("(C;A,B;M) is independent but (C;B,A;M) is not"),
                    (false, true) => violated("(C;B,A;M) is independent but (C;A,B;M) is not"),
                    _ => holds,
                }
            }
            Axiom::BasicExistence => {
                let s = square_of(d, &sq(SQUARE))?;
                if !s.ca.is_iso() && !s.cb.is_iso() {
                    Ok(Outcome::Vacuous)
                } else if rel.decide(&s)? {
                    holds
                } else {
                    violated("C->A or C->B is an isomorphism but (C;A,B;M) is not independent")
                }
            }
            Axiom::UnionFiniteChain => {
                let len = d.nodes.len() / 2;
                let last = len - 1;
                for i in 0..last {
                    let s = [format!("C{i}"), format!("A{i}"), format!("C{last}"), format!("A{last}")];
                    if !independent(rel, d, &s)? {
                        return violated(&format!("the cocone square (C{i};A{i},C{last};A{last}) is not independent"));
                    }
                }
                holds
            }
            _ => self.complete(plan.completion.as_ref().expect("existential plan"), d),
        }
    }

    fn satisfies(&self, c: &Completion, d: &Diagram) -> Result<bool> {
        for s in &c.conditions {
            if !independent(self.rel, d, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn complete(&self, c: &Completion, d: &Diagram) -> Result<Outcome> {
        let (candidate, obstruction) = self.canonical(c, d)?;
        if let Some(obstruction) = obstruction {
            return Ok(Outcome::Violated(Certificate::Impossible { obstruction }));
        }
        if let Some(full) = candidate {
            if self.satisfies(c, &full)? {
                return Ok(Outcome::Holds { completion: Some(full), via: Via::Canonical });
            }
        }
        match self.search(c, d)? {
            Some(full) => Ok(Outcome::Holds { completion: Some(full), via: Via::Search }),
            None => Ok(Outcome::Undecided),
        }
    }

    /// The canonical candidate, or an obstruction proving that no completion exists.
    fn canonical(&self, c: &Completion, d: &Diagram) -> Result<(Option<Diagram>, Option<crate::cat::Obstruction>)> {
        let (cat, cls) = (&self.rel.category, self.rel.cls);
        let mut full = Diagram { labels: c.shape.labels.clone(), nodes: d.nodes.clone(), arrows: d.arrows.clone() };
        let idx = |l: &str| c.shape.labels.iter().position(|x| x == l).expect("label in shape");
        match &c.canonical {
            Canonical::Colimit { sources } => {
                let g = Gluing::from_diagram(d, cls);
                let glued = match glue(cat, &g) {
                    Ok(glued) => glued,
                    Err(GlueError::Obstructed(o)) => return Ok((None, Some(o))),
                    Err(GlueError::Unresolved(_)) => return Ok((None, None)),
                };
                if !cat.contains(&glued.apex) {
                    return Ok((None, None));
                }
                let apex = c.shape.labels.len() - 1;
                full.nodes.push(glued.apex.clone());
                for s in sources {
                    let src = idx(s);
                    let map = Morphism::new(d.nodes[src].clone(), glued.apex.clone(), glued.legs[src].clone())?;
                    if !cls.contains(&map) {
                        return Ok((None, None));
                    }
                    full.arrows.push(Arrow { src, dst: apex, map });
                }
            }
            Canonical::Generated => {
                let parts = [d.path("A", "M")?, d.path("B", "M")?];
                let (incl, factors) = generated(FactorizationSystem::for_class(cls), &parts)?;
                let a2 = incl.dom().clone();
                if !cat.contains(&a2) || !factors.iter().chain([&incl]).all(|m| cls.contains(m)) {
                    return Ok((None, None));
                }
                let m = d.node("M").expect("M").clone();
                full.nodes.push(a2);
                full.nodes.push(m.clone());
                let (a2, n) = (idx("A'"), idx("N"));
                full.arrows.push(Arrow { src: idx("A"), dst: a2, map: factors[0].clone() });
                full.arrows.push(Arrow { src: idx("B"), dst: a2, map: factors[1].clone() });
                full.arrows.push(Arrow { src: a2, dst: n, map: incl });
                full.arrows.push(Arrow { src: idx("M"), dst: n, map: Morphism::identity(&m) });
            }
        }
        debug_assert!(full.commutes());
        Ok((Some(full), None))
    }

    fn search(&self, c: &Completion, d: &Diagram) -> Result<Option<Diagram>> {
        let pool = self.pool()?;
        let mut en = Enumerator::new(&self.rel.category, c.shape.shape(), self.rel.cls, self.scope.completion_size)
            .prefix(d.clone())
            .hom_cap(self.scope.max_hom)
            .budget(Some(self.scope.search_budget));
        for (i, l) in c.shape.labels.iter().enumerate() {
            let dom = if i < d.nodes.len() { NodeDomain::Among(vec![]) } else { NodeDomain::Among(pool.clone()) };
            en = en.domain(l, dom);
        }
        let mut found = None;
        let mut err = None;
        en.run(|full| match self.satisfies(c, full) {
            Ok(true) => {
                found = Some(full.clone());
                ControlFlow::Break(())
            }
            Ok(false) => ControlFlow::Continue(()),
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(found),
        }
    }
}

/// Whether the last node of the partial diagram `p` completes a hypothesis that fails.
fn prune_hypotheses(rel: &Relation, axiom: Axiom, plan: &Plan, p: &Diagram) -> bool {
    let Some(last) = p.labels.last() else { return true };
    for h in &plan.hypotheses {
        let latest = h.iter().max_by_key(|l| plan.shape.labels.iter().position(|x| x == *l)).expect("four labels");
        if latest == last && !independent(rel, p, h).unwrap_or(true) {
            return false;
        }
    }
    if axiom == Axiom::BasicExistence && p.labels.len() == 3 {
        return p.arrow("C", "A").is_ok_and(Morphism::is_iso) || p.arrow("C", "B").is_ok_and(Morphism::is_iso);
    }
    true
}

/// Checks `axiom` for `rel` on every obligation within `scope`.
///
/// The reported counterexample is the one with the least [`Diagram::order_key`];
/// a bounded search that finds no completion makes the verdict inconclusive.
pub fn check_axiom(rel: &Relation, axiom: Axiom, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    let ctx = Ctx::new(rel, scope);
    let mut tally = Tally::new();
    let mut sampler = scope.sampler();
    for plan in plans(axiom) {
        let bound = Cell::new(tally.size_bound());
        let mut err = None;
        let en = Enumerator::new(&rel.category, plan.shape.shape(), rel.cls, scope.max_size)
            .hom_cap(scope.max_hom)
            .prune(|p| p.total_size() <= bound.get() && prune_hypotheses(rel, axiom, &plan, p));
        let stats = en.run(|d| {
            if sampler.as_mut().is_some_and(|s| !s.keep()) {
                tally.timing.sampled_out += 1;
                return ControlFlow::Continue(());
            }
            match ctx.evaluate(axiom, &plan, d, true) {
                Ok(Outcome::Vacuous) => {}
                Ok(Outcome::Holds { completion, via }) => {
                    match via {
                        Via::Canonical => tally.timing.canonical += 1,
                        Via::Search => tally.timing.searched += 1,
                        Via::Direct => {}
                    }
                    tally.holds(completion.as_ref().unwrap_or(d));
                }
                Ok(Outcome::Violated(c)) => {
                    tally.violated(d, c);
                    bound.set(tally.size_bound());
                }
                Ok(Outcome::Undecided) => tally.undecided(d),
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
        tally.timing.diagrams += stats.diagrams;
    }
    let note = (axiom == Axiom::UnionFiniteChain).then(|| "finite-chain proxy: chains of length 3 and 4".to_string());
    Ok(tally.verdict(&rel.name, axiom.tag(), scope, note))
}

/// Evaluates one obligation; `d` must have the obligation shape of `axiom`.
pub fn evaluate(rel: &Relation, axiom: Axiom, d: &Diagram, scope: &Scope) -> Result<Outcome> {
    let plan = plan_for(axiom, d)?;
    check_instance(rel, &plan.shape, d)?;
    Ctx::new(rel, scope).evaluate(axiom, &plan, d, false)
}

/// `d` has the arrows of `shape`, commutes, and every arrow lies in the class.
fn check_instance(rel: &Relation, shape: &ShapeSpec, d: &Diagram) -> Result<()> {
    if d.labels != shape.labels || d.arrows.len() != shape.edges.len() {
        return Err(Error::MalformedDiagram("diagram does not match the obligation shape".into()));
    }
    for (s, t) in &shape.edges {
        let m = d.arrow(s, t)?;
        if !rel.cls.contains(m) {
            return Err(Error::Contract(format!("arrow {s} -> {t} is not in {}", rel.cls.name())));
        }
    }
    if !d.commutes() {
        return Err(Error::MalformedDiagram("diagram does not commute".into()));
    }
    Ok(())
}

/// Re-runs a verdict's witness through the condition it was reported for.
///
/// A `fails` witness must reproduce the same certificate, an `inconclusive`
/// witness must stay undecided, and a `holds-within-scope` witness must satisfy the
/// axiom (for existential axioms the witness is the completed diagram).
pub fn replay(rel: &Relation, v: &Verdict) -> Result<bool> {
    let axiom: Axiom = v.axiom.parse()?;
    let Some(w) = &v.witness else { return Ok(v.status != Status::Fails) };
    match v.status {
        Status::Fails => match evaluate(rel, axiom, w, &v.scope)? {
            Outcome::Violated(c) => Ok(Some(c) == v.certificate),
            _ => Ok(false),
        },
        Status::Inconclusive => Ok(evaluate(rel, axiom, w, &v.scope)? == Outcome::Undecided),
        Status::HoldsWithinScope if !axiom.is_existential() => {
            Ok(matches!(evaluate(rel, axiom, w, &v.scope)?, Outcome::Holds { .. }))
        }
        Status::HoldsWithinScope => {
            let plan = plans(axiom)
                .into_iter()
                .find(|p| p.completion.as_ref().is_some_and(|c| c.shape.labels == w.labels))
                .ok_or_else(|| Error::MalformedDiagram("witness is not a completed obligation".into()))?;
            let c = plan.completion.as_ref().expect("existential plan");
            check_instance(rel, &c.shape, w)?;
            for h in &plan.hypotheses {
                if !independent(rel, w, h)? {
                    return Ok(false);
                }
            }
            Ctx::new(rel, &v.scope).satisfies(c, w)
        }
    }
}

/// Whether two squares over one span amalgamate: some `E` with arrows from both
/// apexes agreeing on `A` and `B`.
pub fn amalgamate_squares(cat: &Category, cls: MorphismClass, sq1: &Square, sq2: &Square, scope: &Scope) -> Result<Verdict> {
    scope.validate()?;
    if sq1.ca != sq2.ca || sq1.cb != sq2.cb {
        return Err(Error::MalformedDiagram("squares have different base spans".into()));
    }
    let rel = Relation::new(format!("amalgamation[{}/{}]", cat.name(), cls.name()), cat.clone(), cls, RelKind::All);
    let plan = plans(Axiom::Uniqueness).into_iter().next().expect("one plan");
    let c = plan.completion.as_ref().expect("existential plan");
    let second = [sq2.am.clone(), sq2.bm.clone()];
    let mut d = sq1.to_diagram();
    d.labels.push("M'".into());
    d.nodes.push(sq2.m().clone());
    d.arrows.push(Arrow { src: 1, dst: 4, map: second[0].clone() });
    d.arrows.push(Arrow { src: 2, dst: 4, map: second[1].clone() });
    check_instance(&rel, &plan.shape, &d)?;
    let mut timing = Timing { diagrams: 1, obligations: 1, ..Timing::default() };
    let outcome = if sq1 == sq2 {
        let mut full = d.clone();
        full.labels.push("N".into());
        full.nodes.push(sq1.m().clone());
        full.arrows.push(Arrow { src: 3, dst: 5, map: Morphism::identity(sq1.m()) });
        full.arrows.push(Arrow { src: 4, dst: 5, map: Morphism::identity(sq1.m()) });
        Outcome::Holds { completion: Some(full), via: Via::Canonical }
    } else {
        Ctx::new(&rel, scope).complete(c, &d)?
    };
    let (status, witness, certificate) = match outcome {
        Outcome::Holds { completion, via } => {
            match via {
                Via::Search => timing.searched += 1,
                _ => timing.canonical += 1,
            }
            (Status::HoldsWithinScope, completion, None)
        }
        Outcome::Violated(c) => {
            timing.violations += 1;
            (Status::Fails, Some(d), Some(c))
        }
        _ => {
            timing.undecided += 1;
            (Status::Inconclusive, Some(d), None)
        }
    };
    Ok(Verdict { relation: rel.name, axiom: "amalgamation".into(), status, scope: scope.clone(), witness, certificate, timing, note: None })
}

/// Builds the obligation diagram for `axiom` from labelled nodes and arrows; a
/// convenience for tests and fixtures.
pub fn obligation(axiom: Axiom, nodes: Vec<(&str, Obj)>, arrows: Vec<(&str, &str, Vec<u32>)>) -> Result<Diagram> {
    let d = Diagram::build(nodes, arrows)?;
    plan_for(axiom, &d)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::indrel::relation::pullback_relation;

    fn set_mono() -> Relation {
        pullback_relation(&Category::FinSet, MorphismClass::Mono).unwrap()
    }

    fn set_all() -> Relation {
        pullback_relation(&Category::FinSet, MorphismClass::All).unwrap()
    }

    #[test]
    fn tags_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.tag().parse::<Axiom>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.tag()));
        }
        assert!("union".parse::<Axiom>().is_err());
    }

    #[test]
    fn union_shape_is_a_ladder() {
        let s = union_chain(3).shape();
        assert_eq!(s.labels, ["C0", "A0", "C1", "A1", "C2", "A2"]);
        assert_eq!(s.edges.len(), 7);
    }

    #[test]
    fn symmetry_holds_for_set_pullbacks() {
        let v = check_axiom(&set_mono(), Axiom::Symmetry, &Scope::new(3, 3)).unwrap();
        assert!(v.holds(), "{}", v.to_json());
        assert!(v.timing.obligations > 0);
    }

    #[test]
    fn invariance_fails_for_all_functions_with_the_minimal_witness() {
        let v = check_axiom(&set_all(), Axiom::Invariance, &Scope::new(2, 2)).unwrap();
        assert!(v.fails());
        let w = v.witness.as_ref().unwrap();
        let sizes: Vec<usize> = w.nodes.iter().map(|o| o.card()).collect();
        assert_eq!(sizes, [0, 1, 1, 2, 1]);
        assert!(replay(&set_all(), &v).unwrap());
    }

    #[test]
    fn existence_is_discharged_by_pushouts() {
        let v = check_axiom(&set_mono(), Axiom::Existence, &Scope::new(3, 3)).unwrap();
        assert!(v.holds());
        assert_eq!(v.timing.canonical, v.timing.obligations);
        assert!(replay(&set_mono(), &v).unwrap());
    }

    #[test]
    fn obligation_shape_is_checked() {
        let d = obligation(
            Axiom::Existence,
            vec![("C", Obj::set(0)), ("A", Obj::set(1)), ("B", Obj::set(1))],
            vec![("C", "A", vec![]), ("C", "B", vec![])],
        )
        .unwrap();
        assert!(matches!(evaluate(&set_mono(), Axiom::Existence, &d, &Scope::new(2, 2)).unwrap(), Outcome::Holds { .. }));
        assert!(evaluate(&set_mono(), Axiom::Symmetry, &d, &Scope::new(2, 2)).is_err());
    }

    #[test]
    fn identical_squares_amalgamate_through_identities() {
        let d = obligation(
            Axiom::Symmetry,
            vec![("C", Obj::set(0)), ("A", Obj::set(1)), ("B", Obj::set(1)), ("M", Obj::set(2))],
            vec![("C", "A", vec![]), ("C", "B", vec![]), ("A", "M", vec![0]), ("B", "M", vec![1])],
        )
        .unwrap();
        let s = d.square("C", "A", "B", "M").unwrap();
        let v = amalgamate_squares(&Category::FinSet, MorphismClass::Mono, &s, &s, &Scope::new(2, 2)).unwrap();
        assert!(v.holds());
        let w = v.witness.unwrap();
        assert!(w.arrow("M", "N").unwrap().is_iso());
    }

    #[test]
    fn graph_squares_with_disagreeing_edges_do_not_amalgamate() {
        let g = |n, e: &[(u32, u32)]| Arc::new(Obj::graph(n, e));
        let (c, a, b) = (g(1, &[]), g(2, &[]), g(2, &[]));
        let (n, n2) = (g(3, &[(1, 2)]), g(3, &[]));
        let m = |d: &Arc<Obj>, t: &Arc<Obj>, v: Vec<u32>| Morphism::new(d.clone(), t.clone(), v).unwrap();
        let s1 = Square::new(m(&c, &a, vec![0]), m(&c, &b, vec![0]), m(&a, &n, vec![0, 1]), m(&b, &n, vec![0, 2])).unwrap();
        let s2 = Square::new(m(&c, &a, vec![0]), m(&c, &b, vec![0]), m(&a, &n2, vec![0, 1]), m(&b, &n2, vec![0, 2])).unwrap();
        let v = amalgamate_squares(&Category::FinGraph, MorphismClass::Emb, &s1, &s2, &Scope::new(3, 3)).unwrap();
        assert!(v.fails());
        assert!(matches!(
            v.certificate,
            Some(Certificate::Impossible { obstruction: crate::cat::Obstruction::EdgeDisagreement { .. } })
        ));
    }
}
