use std::fmt::Write as _;

use serde::Serialize;

use super::builtin::SUITES;
use super::config::Format;
use crate::instances::InstanceRegistry;

#[derive(Serialize)]
struct Category {
    name: String,
    classes: Vec<&'static str>,
}

#[derive(Serialize)]
struct Functor {
    name: String,
    functor: String,
    dom: String,
    cod: String,
    dom_class: &'static str,
    cod_class: &'static str,
}

#[derive(Serialize)]
struct Relation {
    name: String,
    category: String,
    class: &'static str,
}

#[derive(Serialize)]
struct Catalogue {
    categories: Vec<Category>,
    functors: Vec<Functor>,
    relations: Vec<Relation>,
    suites: Vec<&'static str>,
}

/// Deterministic listing of `reg` and the shipped suites, minus `disabled`.
pub fn list_registry(reg: &InstanceRegistry, disabled: &[String], format: Format) -> String {
    let mut reg = reg.clone();
    reg.disable(disabled);
    let cat = Catalogue {
        categories: reg
            .categories()
            .map(|e| Category { name: e.name.clone(), classes: e.classes.iter().map(|c| c.name()).collect() })
            .collect(),
        functors: reg
            .functors()
            .map(|(name, f)| Functor {
                name: name.into(),
                functor: f.name(),
                dom: f.dom().name(),
                cod: f.cod().name(),
                dom_class: f.dom_cls.name(),
                cod_class: f.cod_cls.name(),
            })
            .collect(),
        relations: reg
            .relations()
            .map(|r| Relation { name: r.name.clone(), category: r.category.name(), class: r.cls.name() })
            .collect(),
        suites: SUITES.into_iter().filter(|s| !disabled.iter().any(|d| d == s)).collect(),
    };
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&cat).expect("catalogue serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::from("categories\n");
            for c in &cat.categories {
                let _ = writeln!(out, "  {:<20} {}", c.name, c.classes.join(", "));
            }
            out.push_str("functors\n");
            for f in &cat.functors {
                let _ = writeln!(out, "  {:<24} {}/{} -> {}/{}", f.name, f.dom, f.dom_class, f.cod, f.cod_class);
            }
            out.push_str("relations\n");
            for r in &cat.relations {
                let _ = writeln!(out, "  {:<52} {}/{}", r.name, r.category, r.class);
            }
            out.push_str("suites\n");
            for s in &cat.suites {
                let _ = writeln!(out, "  {s}");
            }
            out
        }
    }
}
