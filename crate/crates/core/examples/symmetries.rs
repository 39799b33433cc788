//! Symmetry group of the built-in polytope, its generators and the action on the cube diagram.

use racg::polytope::build_polytope_p;
use racg::symmetry::{automorphisms, group_report};

fn main() -> racg::Result<()> {
    let p = build_polytope_p();
    let group = automorphisms(&p)?;
    let labels = p.labels();
    println!("order {}", group.order());
    for g in &group.generators {
        println!("  {}", g.cycle_notation(&labels));
    }
    let report = group_report(&group, &p)?;
    println!("facet orbits: {:?}", report.orbits.iter().map(Vec::len).collect::<Vec<_>>());
    println!("cube action: kernel {}, image {}", report.cube_kernel.len(), report.cube_image_order);
    Ok(())
}
