//! Load a polytope from JSON (or use the ideal triangle) and run the finite-volume check.
//!
//! cargo run --example load_polytope -- path/to/polytope.json

use racg::faces::finite_volume_certificate;
use racg::fixtures::ideal_triangle;
use racg::polytope::PolytopeSpec;

fn main() -> racg::Result<()> {
    let p = match std::env::args().nth(1) {
        Some(path) => PolytopeSpec::load(path)?,
        None => ideal_triangle(),
    };
    let check = racg::polytope::is_right_angled(&p);
    println!("{} facets in dimension {}, right-angled {}", p.len(), p.dim(), check.right_angled);
    let cert = finite_volume_certificate(&p)?;
    println!(
        "finite volume {} ({} ideal, {} finite vertices)",
        cert.finite_volume, cert.ideal_vertex_count, cert.finite_vertex_count
    );
    Ok(())
}
