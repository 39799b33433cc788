//! Maximal pairwise-disjoint facet sets and the determination audit for one of them.

use racg::ends::{census, determination_audit, maximal_disjoint_sets, DisjointMode};
use racg::polytope::build_polytope_p;
use racg::symmetry::automorphisms;

fn main() -> racg::Result<()> {
    let p = build_polytope_p();
    let group = automorphisms(&p)?;
    let sets = maximal_disjoint_sets(&p, DisjointMode::Strict, &group);
    let c = census(&p, &sets, DisjointMode::Strict);
    println!("{} maximal sets in {} orbits", c.maximal_set_count, c.orbit_count);
    for o in &c.orbits {
        println!("  {:>3} x {:?}", o.size, o.representative);
    }
    let report = determination_audit(&p, &sets[0].selection);
    println!("removing {:?}: all determined {}", report.removed, report.all_determined);
    Ok(())
}
