//! Subobject joins computed through multipushouts, against the brute-force join.

use std::sync::Arc;

use indlift::cat::{join_bruteforce, join_via_multipushout, subobjects_of, Category, FactorizationSystem, MorphismClass, Obj};

fn main() -> indlift::Result<()> {
    let cat = Category::FinGraph;
    let fs = FactorizationSystem::for_class(MorphismClass::Emb);
    let d = Arc::new(Obj::graph(4, &[(0, 1), (1, 2), (2, 3)]));
    let subs = subobjects_of(&cat, fs, &d)?;
    let mut agree = 0;
    for a in &subs {
        for b in &subs {
            let via = join_via_multipushout(&cat, fs, a, b)?;
            assert!(via.same(&join_bruteforce(&cat, fs, a, b)?));
            agree += 1;
        }
    }
    println!("{} subobjects of the path on 4 vertices; {agree} joins agree", subs.len());
    Ok(())
}
