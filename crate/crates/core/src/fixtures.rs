//! Small hyperbolic polygons with known answers, for tests and examples.

use crate::lorentz::LorentzVector;
use crate::polytope::{FacetNormal, Family, PolytopeSpec};

fn polygon(vs: &[&[(i64, i64)]]) -> PolytopeSpec {
    let facets = vs
        .iter()
        .enumerate()
        .map(|(i, c)| FacetNormal::new(format!("v{}", i + 1), Family::Other, LorentzVector::from_fracs(c)))
        .collect();
    PolytopeSpec::new(2, facets).expect("fixture normals are unit")
}

/// Three pairwise parallel lines; three ideal vertices.
pub fn ideal_triangle() -> PolytopeSpec {
    polygon(&[&[(1, 1), (0, 1), (0, 1)], &[(-1, 1), (1, 1), (1, 1)], &[(-1, 1), (-1, 1), (1, 1)]])
}

/// Two ultraparallel lines (inner product -2) bounding an infinite-area strip.
pub fn ultraparallel_strip() -> PolytopeSpec {
    polygon(&[&[(1, 1), (0, 1), (0, 1)], &[(-2, 1), (1, 1), (2, 1)]])
}

/// Compact right-angled pentagon with rational normals.
pub fn right_angled_pentagon() -> PolytopeSpec {
    polygon(&[
        &[(1, 1), (0, 1), (0, 1)],
        &[(0, 1), (1, 1), (0, 1)],
        &[(-185, 104), (0, 1), (153, 104)],
        &[(-85, 13), (-41, 9), (925, 117)],
        &[(0, 1), (-925, 756), (533, 756)],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_is_right_angled_with_far_non_neighbours() {
        let p = right_angled_pentagon();
        let t = p.positions();
        for i in 0..5 {
            assert!(t.orthogonal(i, (i + 1) % 5));
            assert!(t.ultraparallel(i, (i + 2) % 5));
        }
    }

    #[test]
    fn triangle_and_strip_positions() {
        let t = ideal_triangle().positions();
        assert!(t.parallel(0, 1) && t.parallel(1, 2) && t.parallel(0, 2));
        assert!(ultraparallel_strip().positions().ultraparallel(0, 1));
    }
}
