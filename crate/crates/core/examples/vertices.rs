//! Vertex enumeration, finite-volume certificate and f-vector.

use racg::faces::{enumerate_vertices, f_vector, finite_volume_certificate, VertexKind};
use racg::fixtures::right_angled_pentagon;
use racg::polytope::build_polytope_p;

fn main() -> racg::Result<()> {
    for (name, p) in [("pentagon", right_angled_pentagon()), ("P", build_polytope_p())] {
        let vs = enumerate_vertices(&p)?;
        let ideal = vs.iter().filter(|v| v.kind == VertexKind::Ideal).count();
        let cert = finite_volume_certificate(&p)?;
        println!(
            "{name}: {} vertices ({ideal} ideal), finite volume {}, f-vector {:?}",
            vs.len(),
            cert.finite_volume,
            f_vector(&p)?
        );
    }
    Ok(())
}
