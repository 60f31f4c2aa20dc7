//! Shipped categories, functors and independence relations.

pub mod amalgam;
pub mod registry;
pub mod relations;

pub use amalgam::{canonical_amalgam, span_amalgam, squares_amalgam, Amalgam};
pub use registry::{CategoryEntry, InstanceRegistry};
pub use relations::{compare_relations, relation_bil_star, relation_binfunc, relation_linbil, relation_linvec};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{Category, MorphismClass};
    use crate::indrel::{check_axiom, intersect_relations, Axiom, Certificate, Relation, Scope};
    use crate::lifting::{lift_relation, multi_reflection_at};
    use crate::Error;

    #[test]
    fn star_is_the_meet_of_the_two_lifts() {
        let reg = InstanceRegistry::standard();
        let lin = lift_relation(reg.functor("bil-to-vec-2").unwrap(), reg.relation("lin[fin-vec-2]").unwrap()).unwrap();
        let zero = lift_relation(reg.functor("bil-to-binfunc-2").unwrap(), reg.relation("zero[fin-binfunc-2]").unwrap()).unwrap();
        let meet = intersect_relations(vec![lin, zero]).unwrap();
        let star = reg.resolve("star", "fin-bil-2", "emb", None).unwrap();
        let v = compare_relations(&meet, &star, &Scope::new(2, 2)).unwrap();
        assert!(v.holds(), "{}", v.to_json());
    }

    #[test]
    fn lifted_set_pullbacks_are_graph_pullbacks() {
        let reg = InstanceRegistry::standard();
        let lifted = reg.resolve("pullback", "fin-set", "mono", Some("graph-to-set")).unwrap();
        assert_eq!(lifted.cls, MorphismClass::Emb);
        let v = compare_relations(&lifted, reg.relation("pullback[fin-graph/emb]").unwrap(), &Scope::new(3, 3)).unwrap();
        assert!(v.holds(), "{}", v.to_json());
    }

    #[test]
    fn lin_on_forms_fails_uniqueness_where_star_holds() {
        let reg = InstanceRegistry::standard();
        let scope = Scope::new(2, 2);
        let lin = check_axiom(reg.relation("lin[fin-bil-2]").unwrap(), Axiom::Uniqueness, &scope).unwrap();
        assert!(lin.fails(), "{}", lin.to_json());
        assert!(matches!(lin.certificate, Some(Certificate::Impossible { .. })), "{}", lin.to_json());
        assert!(lin.to_json().contains("form-value"), "{}", lin.to_json());
        let star = check_axiom(reg.relation("star[fin-bil-2]").unwrap(), Axiom::Uniqueness, &scope).unwrap();
        assert!(star.holds(), "{}", star.to_json());
    }

    #[test]
    fn connected_graphs_are_multireflective() {
        let reg = InstanceRegistry::standard();
        let f = reg.functor("conn-graph-to-graph").unwrap();
        let scope = Scope::new(3, 3);
        for d in Category::FinGraph.objects(3).unwrap() {
            let mr = multi_reflection_at(f, &d, &scope).unwrap();
            assert!(mr.verified, "{d:?}");
        }
    }

    #[test]
    fn registry_addressing() {
        let reg = InstanceRegistry::standard();
        assert_eq!(reg.category("fin-set*fin-graph").unwrap().name(), "fin-set*fin-graph");
        assert_eq!(reg.category("coprod(fin-set,fin-set)").unwrap().name(), "coprod(fin-set,fin-set)");
        assert!(matches!(reg.category("fin-vec-3"), Err(Error::Unknown(_))));
        assert!(InstanceRegistry::full().category("fin-vec-3").is_ok());
        assert!(reg.class("fin-set", "emb").is_err());
        assert!(matches!(reg.functor("nope"), Err(Error::Unknown(_))));
        assert!(reg.relation("lift[conn-graph-to-graph](pullback[fin-graph/emb])").is_ok());
        let star: &Relation = reg.relation("star[fin-bil-2]").unwrap();
        assert_eq!(reg.resolve("star", "fin-bil-2", "mono", None).unwrap().cls, MorphismClass::Mono);
        assert_eq!(star.cls, MorphismClass::Emb);
        assert!(reg.resolve("pullback", "fin-bil-2", "mono", None).is_err());
        assert!(matches!(InstanceRegistry::with_fields(&[7]), Err(Error::UnsupportedField(7))));
    }

    #[test]
    fn registered_relations_are_total_on_small_squares() {
        let reg = InstanceRegistry::standard();
        for rel in reg.relations() {
            let v = compare_relations(rel, rel, &Scope::new(2, 2)).unwrap();
            assert!(v.holds(), "{}", rel.name);
        }
    }
}
