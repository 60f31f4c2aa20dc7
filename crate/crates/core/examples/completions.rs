//! Asks for a 2-completion along the forgetful functor from graphs with an
//! involution, and gets an impossibility certificate.

use indlift::cat::{Diagram, Obj};
use indlift::indrel::Scope;
use indlift::instances::InstanceRegistry;
use indlift::lifting::{find_completion, CompletionRequest};

fn main() -> indlift::Result<()> {
    let reg = InstanceRegistry::standard();
    let f = reg.functor("sigma-graph-to-graph")?;
    let rel = reg.relation("pullback[fin-graph/emb]")?;
    let swap = Obj::sigma_graph(&[], vec![1, 0]);
    let base = Diagram::build(
        vec![("C", Obj::sigma_graph(&[], vec![])), ("A", swap.clone()), ("B", swap)],
        vec![("C", "A", vec![]), ("C", "B", vec![])],
    )?;
    let req = CompletionRequest::new(2, base, Obj::graph(4, &[(0, 2)]), vec![("A", vec![0, 1]), ("B", vec![2, 3])])?;
    let (verdict, found) = find_completion(f, rel, &req, &Scope::new(4, 4))?;
    println!("{}", verdict.to_json());
    assert!(found.is_none());
    Ok(())
}
