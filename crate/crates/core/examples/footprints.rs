//! Walls of the built-in polytope seen in the upper half-space model.

use racg::models::{footprint_catalog, UpperHalfSpaceWall};
use racg::polytope::build_polytope_p;

fn main() -> racg::Result<()> {
    for (label, wall) in footprint_catalog(&build_polytope_p())? {
        match wall {
            UpperHalfSpaceWall::AffineHyperplane { normal, offset } => {
                println!("{label:<12} plane  {normal:?} . p = {offset}")
            }
            UpperHalfSpaceWall::Sphere { center, radius } => println!("{label:<12} sphere {center:?} r = {radius}"),
        }
    }
    Ok(())
}
