//! Lifts the pullback relation on sets along the vertex-set functor and shows
//! which axioms survive on graphs with embeddings.

use indlift::indrel::{check_axiom, Axiom, Scope};
use indlift::instances::InstanceRegistry;
use indlift::lifting::lift_relation;

fn main() -> indlift::Result<()> {
    let reg = InstanceRegistry::standard();
    let lifted = lift_relation(reg.functor("graph-to-set")?, reg.relation("pullback[fin-set/mono]")?)?;
    println!("{} on {}/{}", lifted.name, lifted.category.name(), lifted.cls.name());
    let scope = Scope::new(3, 4);
    for axiom in [Axiom::Symmetry, Axiom::Transitivity, Axiom::Existence, Axiom::Uniqueness] {
        let v = check_axiom(&lifted, axiom, &scope)?;
        println!("{:<14} {}", axiom.tag(), v.status.tag());
        if let Some(c) = &v.certificate {
            println!("  certificate {}", serde_json::to_string(c).expect("certificates serialize"));
        }
    }
    Ok(())
}
