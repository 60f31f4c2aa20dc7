//! Regenerates the regression fixtures under `crates/core/fixtures/`.

use std::path::PathBuf;

use indlift::cat::{Diagram, Obj};
use indlift::indrel::{Axiom, Scope};
use indlift::lifting::CompletionRequest;
use indlift::suite::{Fixture, RelationRef};

fn main() -> indlift::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;

    let swap = Obj::sigma_graph(&[], vec![1, 0]);
    let base = Diagram::build(
        vec![("C", Obj::sigma_graph(&[], vec![])), ("A", swap.clone()), ("B", swap)],
        vec![("C", "A", vec![]), ("C", "B", vec![])],
    )?;
    let req = CompletionRequest::new(2, base, Obj::graph(4, &[(0, 2)]), vec![("A", vec![0, 1]), ("B", vec![2, 3])])?;

    let fixtures = [
        (
            "finset-all-invariance",
            Fixture::record_axiom(RelationRef::new("pullback", "fin-set", "all"), None, Axiom::Invariance, &Scope::new(3, 4))?,
        ),
        (
            "finset-all-semi-invariance",
            Fixture::record_axiom(RelationRef::new("pullback", "fin-set", "all"), None, Axiom::SemiInvariance, &Scope::new(3, 4))?,
        ),
        (
            "graph-lift-uniqueness",
            Fixture::record_axiom(
                RelationRef::new("pullback", "fin-set", "mono"),
                Some("graph-to-set"),
                Axiom::Uniqueness,
                &Scope::new(3, 4),
            )?,
        ),
        (
            "sigma-graph-swap-completion",
            Fixture::record_completion(
                RelationRef::new("pullback", "fin-graph", "emb"),
                "sigma-graph-to-graph",
                &req,
                &Scope::new(4, 4),
            )?,
        ),
        (
            "identity-lift-existence",
            Fixture::record_axiom(
                RelationRef::new("pullback", "fin-set", "mono"),
                Some("identity"),
                Axiom::Existence,
                &Scope::new(3, 4),
            )?,
        ),
    ];
    for (name, fixture) in fixtures {
        let path = dir.join(format!("{name}.json"));
        fixture.save(&path)?;
        println!("{:<32} {}", name, fixture.verdict().status.tag());
    }
    Ok(())
}
