//! The boundary complex of the 4-cube, the map from facets to its cubes and
//! edges, and the prediction of facet positions from cube combinatorics.
//!
//! A face of the 4-cube `[-1, 1]⁴` is the sum of the cube vectors containing
//! it, so it is a sign vector in `{-1, 0, 1}⁴`: one nonzero entry for a cube,
//! two for a quadrilateral, three for an edge, four for a vertex.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{mutual_position, FacetNormal, Family, PolytopeSpec, PositionKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeFace {
    sign_vector: [i8; 4],
}

impl CubeFace {
    pub fn new(sign_vector: [i8; 4]) -> Option<Self> {
        let valid = sign_vector.iter().all(|s| (-1..=1).contains(s)) && sign_vector.iter().any(|&s| s != 0);
        valid.then_some(Self { sign_vector })
    }

    pub fn sign_vector(&self) -> [i8; 4] {
        self.sign_vector
    }

    /// 3 for a cube, 2 for a quadrilateral, 1 for an edge, 0 for a vertex.
    pub fn dim(&self) -> usize {
        4 - self.support_size()
    }

    fn support_size(&self) -> usize {
        self.sign_vector.iter().filter(|&&s| s != 0).count()
    }

    pub fn is_cube(&self) -> bool {
        self.dim() == 3
    }

    pub fn is_edge(&self) -> bool {
        self.dim() == 1
    }

    /// Whether `self` is a face of `other` (or equal to it).
    pub fn is_face_of(&self, other: &Self) -> bool {
        (0..4).all(|k| other.sign_vector[k] == 0 || other.sign_vector[k] == self.sign_vector[k])
    }

    fn conflicts(&self, other: &Self) -> usize {
        (0..4).filter(|&k| self.sign_vector[k] * other.sign_vector[k] < 0).count()
    }

    fn same_support(&self, other: &Self) -> bool {
        (0..4).all(|k| (self.sign_vector[k] == 0) == (other.sign_vector[k] == 0))
    }
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.sign_vector;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// All 8 cubes, in the facet order of the built-in polytope.
pub fn cubes() -> Vec<CubeFace> {
    (0..4)
        .flat_map(|axis| {
            [1, -1].map(|s| {
                let mut v = [0; 4];
                v[axis] = s;
                CubeFace { sign_vector: v }
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Incidence {
    /// One face contains the other (either way round, including equality).
    ContainedIn,
    /// Distinct faces whose only common point is a vertex.
    MeetAtVertex,
    /// Common part is bigger than a vertex without containment.
    Intersect,
    /// Two edges bounding the same quadrilateral from opposite sides.
    OppositeInQuadrilateral,
    Disjoint,
    /// Disjoint edges that are not opposite in a quadrilateral.
    Other,
}

pub fn incidence(a: &CubeFace, b: &CubeFace) -> Incidence {
    if a.is_face_of(b) || b.is_face_of(a) {
        return Incidence::ContainedIn;
    }
    if a.conflicts(b) == 0 {
        // the common face has the union of the supports
        let union = (0..4).filter(|&k| a.sign_vector[k] != 0 || b.sign_vector[k] != 0).count();
        return if union == 4 { Incidence::MeetAtVertex } else { Incidence::Intersect };
    }
    if a.is_edge() && b.is_edge() {
        return if a.same_support(b) && a.conflicts(b) == 1 {
            Incidence::OppositeInQuadrilateral
        } else {
            Incidence::Other
        };
    }
    Incidence::Disjoint
}

/// The cube (families I and II) or edge (family III) carrying the facet.
pub fn phi(f: &FacetNormal) -> Result<CubeFace> {
    let expected = match f.family {
        Family::TypeI | Family::TypeII => 1,
        Family::TypeIII => 3,
        Family::Other => return Err(Error::MissingFamily(f.label.clone())),
    };
    let a = f.a_projection();
    let bad = || Error::NotFamilyCoherent(format!("{} has boundary coordinates outside the cube diagram", f.label));
    if a.len() != 4 {
        return Err(bad());
    }
    let mut v = [0i8; 4];
    for (k, x) in a.iter().enumerate() {
        v[k] = if x.is_zero() {
            0
        } else if x.is_one() {
            1
        } else if (-x).is_one() {
            -1
        } else {
            return Err(bad());
        };
    }
    let face = CubeFace::new(v).ok_or_else(bad)?;
    if face.support_size() != expected {
        return Err(bad());
    }
    Ok(face)
}

/// The position of two facets read off from the cube diagram alone.
pub fn predict_position(f: &FacetNormal, g: &FacetNormal) -> Result<PositionKind> {
    use Family::*;
    use Incidence::*;
    use PositionKind::*;
    let (a, b) = (phi(f)?, phi(g)?);
    let inc = incidence(&a, &b);
    let (lo, hi) = (f.family.min(g.family), f.family.max(g.family));
    let kind = match ((lo, hi), inc) {
        ((TypeI, TypeI) | (TypeII, TypeII), Intersect) => Some(Intersecting),
        ((TypeI, TypeI) | (TypeII, TypeII), Disjoint) => Some(Parallel),
        ((TypeI, TypeII), ContainedIn) => Some(Intersecting),
        ((TypeI, TypeII), Intersect) => Some(Parallel),
        ((TypeI, TypeII), Disjoint) => Some(Ultraparallel),
        ((TypeI | TypeII, TypeIII), ContainedIn) => Some(Intersecting),
        ((TypeI | TypeII, TypeIII), MeetAtVertex) => Some(Parallel),
        ((TypeI | TypeII, TypeIII), Disjoint) => Some(Ultraparallel),
        ((TypeIII, TypeIII), MeetAtVertex) => Some(Intersecting),
        ((TypeIII, TypeIII), OppositeInQuadrilateral) => Some(Parallel),
        ((TypeIII, TypeIII), _) if a != b => Some(Ultraparallel),
        _ => None,
    };
    kind.ok_or_else(|| Error::UnpredictablePair(format!("{} / {}: {a} vs {b} is {inc:?}", f.label, g.label)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionMismatch {
    pub first: String,
    pub second: String,
    /// `None` when the diagram has no rule for the pair.
    pub predicted: Option<PositionKind>,
    pub actual: PositionKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeCorrespondenceReport {
    pub pairs: usize,
    pub mismatches: Vec<PositionMismatch>,
}

impl CubeCorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the diagram prediction with exact geometry on every unordered pair.
///
/// Facets without a family tag, or whose boundary coordinates do not land on
/// the diagram, are an error rather than a mismatch.
pub fn verify_cube_correspondence(p: &PolytopeSpec) -> Result<CubeCorrespondenceReport> {
    for f in p.facets() {
        phi(f)?;
    }
    let n = p.len();
    let facets = p.facets();
    let mismatches: Vec<PositionMismatch> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).filter_map(move |j| {
                let (f, g) = (&facets[i], &facets[j]);
                let actual = mutual_position(f, g).map(|m| m.kind).ok()?;
                let predicted = predict_position(f, g).ok();
                (predicted != Some(actual)).then(|| PositionMismatch {
                    first: f.label.clone(),
                    second: g.label.clone(),
                    predicted,
                    actual,
                })
            })
        })
        .collect();
    Ok(CubeCorrespondenceReport { pairs: n * (n - 1) / 2, mismatches })
}
