//! Multi-reflections of graphs into connected graphs: one member per component.

use indlift::cat::Category;
use indlift::indrel::Scope;
use indlift::instances::InstanceRegistry;
use indlift::lifting::multi_reflection_at;

fn main() -> indlift::Result<()> {
    let reg = InstanceRegistry::standard();
    let f = reg.functor("conn-graph-to-graph")?;
    let scope = Scope::new(4, 4);
    for d in Category::FinGraph.objects(4)? {
        let mr = multi_reflection_at(f, &d, &scope)?;
        let members: Vec<Vec<u32>> = mr.family.iter().map(|(_, e)| e.map().to_vec()).collect();
        println!("{:?} -> {members:?} verified={} checked={}", d.edges().unwrap_or(&[]), mr.verified, mr.checked);
    }
    Ok(())
}
