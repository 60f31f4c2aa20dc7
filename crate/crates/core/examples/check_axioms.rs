//! Checks every axiom of the pullback relation on finite sets with injections.

use std::time::Instant;

use indlift::cat::{Category, MorphismClass};
use indlift::indrel::{check_axiom, pullback_relation, Axiom, Scope};

fn main() -> indlift::Result<()> {
    let size: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let rel = pullback_relation(&Category::FinSet, MorphismClass::Mono)?;
    let scope = Scope::new(size, 2 * size);
    for axiom in Axiom::ALL {
        let t = Instant::now();
        let v = check_axiom(&rel, axiom, &scope)?;
        println!(
            "{:<22} {:<19} obligations={:<8} diagrams={:<8} {:.2?}",
            axiom.tag(),
            v.status.tag(),
            v.timing.obligations,
            v.timing.diagrams,
            t.elapsed()
        );
    }
    Ok(())
}
