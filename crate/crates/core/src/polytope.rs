//! Polytopes given by unit outer normals, the built-in 48-facet polytope,
//! pairwise positions of bounding hyperplanes and the right-angled Coxeter
//! presentation.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{span_rank, ExactScalar, LorentzVector, Matrix};

/// Which of the three vector families of the built-in polytope a facet belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum Family {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
    #[serde(rename = "III")]
    TypeIII,
    #[serde(rename = "other")]
    #[default]
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetNormal {
    pub label: String,
    pub family: Family,
    vector: LorentzVector,
}

impl FacetNormal {
    pub fn new(label: impl Into<String>, family: Family, vector: LorentzVector) -> Self {
        Self { label: label.into(), family, vector }
    }

    pub fn vector(&self) -> &LorentzVector {
        &self.vector
    }

    /// The boundary coordinates `(v₁, …, v_{d-1})`; for `d = 5` these are the
    /// four coordinates that locate the facet on the cube diagram.
    pub fn a_projection(&self) -> Vec<ExactScalar> {
        self.vector.head(self.vector.dim().saturating_sub(1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PositionKind {
    Intersecting,
    Parallel,
    Ultraparallel,
}

/// Mutual position of two bounding hyperplanes, decided from `|⟨vᵢ, vⱼ⟩|` against 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutualPosition {
    pub kind: PositionKind,
    pub inner: ExactScalar,
    /// `cos θ = -⟨vᵢ, vⱼ⟩`, present only for intersecting hyperplanes.
    pub cos_angle: Option<ExactScalar>,
}

impl MutualPosition {
    pub fn from_inner(inner: ExactScalar) -> Self {
        let abs = inner.abs();
        let one = ExactScalar::one();
        let kind = match abs.cmp(&one) {
            std::cmp::Ordering::Less => PositionKind::Intersecting,
            std::cmp::Ordering::Equal => PositionKind::Parallel,
            std::cmp::Ordering::Greater => PositionKind::Ultraparallel,
        };
        let cos_angle = (kind == PositionKind::Intersecting).then(|| -&inner);
        Self { kind, inner, cos_angle }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.kind == PositionKind::Intersecting && self.inner.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeSpec {
    dim: usize,
    facets: Vec<FacetNormal>,
}

impl PolytopeSpec {
    /// Validates that every normal has `d + 1` coordinates and Lorentzian
    /// norm exactly 1, and that normals are pairwise distinct.
    pub fn new(dim: usize, facets: Vec<FacetNormal>) -> Result<Self> {
        for f in &facets {
            if f.vector.len() != dim + 1 {
                return Err(Error::DimensionMismatch { left: dim + 1, right: f.vector.len() });
            }
            let norm = f.vector.norm();
            if !norm.is_one() {
                return Err(Error::NotUnitFacet { label: f.label.clone(), norm: norm.to_string() });
            }
        }
        for (i, f) in facets.iter().enumerate() {
            if let Some(g) = facets[i + 1..].iter().find(|g| g.vector == f.vector) {
                return Err(Error::IdenticalNormals(f.label.clone(), g.label.clone()));
            }
        }
        Ok(Self { dim, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[FacetNormal] {
        &self.facets
    }

    pub fn facet(&self, index: usize) -> Result<&FacetNormal> {
        self.facets.get(index).ok_or(Error::IndexOutOfRange { index, len: self.facets.len() })
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vectors(&self) -> Vec<LorentzVector> {
        self.facets.iter().map(|f| f.vector.clone()).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.facets.iter().map(|f| f.label.as_str()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.facets.iter().position(|f| f.label == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Whether the normals span all of `R^{d,1}`.
    pub fn spans(&self) -> bool {
        span_rank(&self.vectors()).is_ok_and(|r| r == self.dim + 1)
    }

    pub fn require_spanning(&self) -> Result<()> {
        if self.spans() {
            Ok(())
        } else {
            Err(Error::NotSpanning(self.dim + 1))
        }
    }

    pub fn gram_matrix(&self) -> Matrix {
        let n = self.facets.len();
        let rows: Vec<Vec<ExactScalar>> = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| self.facets[i].vector.inner_unchecked(&self.facets[j].vector)).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn positions(&self) -> PositionTable {
        PositionTable::new(self)
    }

    pub fn is_right_angled(&self) -> RightAngleCheck {
        is_right_angled(self)
    }

    /// The polytope with the facets at `keep` (in that order).
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let facets = keep.iter().map(|&i| self.facet(i).cloned()).collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, facets)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dimension: self.dim,
            facets: self
                .facets
                .iter()
                .map(|f| FacetJson { label: f.label.clone(), family: f.family, vector: f.vector.coords().to_vec() })
                .collect(),
        }
    }

    pub fn from_json(json: PolytopeJson) -> Result<Self> {
        let facets = json
            .facets
            .into_iter()
            .map(|f| FacetNormal::new(f.label, f.family, LorentzVector::new(f.vector)))
            .collect();
        Self::new(json.dimension, facets)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(serde_json::from_str(s)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("polytope serializes")
    }
}

impl fmt::Display for PolytopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}-polytope with {} facets", self.dim, self.facets.len())?;
        for facet in &self.facets {
            writeln!(f, "  {:<14} {}", facet.label, facet.vector)?;
        }
        Ok(())
    }
}

/// On-disk polytope format; scalars are strings such as `"1/2"` or `"0+1/2*r2"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dimension: usize,
    pub facets: Vec<FacetJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetJson {
    pub label: String,
    #[serde(default)]
    pub family: Family,
    pub vector: Vec<ExactScalar>,
}

/// Pairwise inner products and positions, computed once and indexed by facet.
#[derive(Clone, Debug)]
pub struct PositionTable {
    n: usize,
    inner: Vec<ExactScalar>,
    kind: Vec<PositionKind>,
}

impl PositionTable {
    pub fn new(p: &PolytopeSpec) -> Self {
        let gram = p.gram_matrix();
        let n = p.len();
        let inner = gram.entries().to_vec();
        let kind = inner.iter().map(|x| MutualPosition::from_inner(x.clone()).kind).collect();
        Self { n, inner, kind }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn inner(&self, i: usize, j: usize) -> &ExactScalar {
        &self.inner[i * self.n + j]
    }

    /// Position of two distinct facets. The diagonal is meaningless.
    pub fn kind(&self, i: usize, j: usize) -> PositionKind {
        self.kind[i * self.n + j]
    }

    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        i != j && self.inner(i, j).is_zero()
    }

    pub fn parallel(&self, i: usize, j: usize) -> bool {
        i != j && self.kind(i, j) == PositionKind::Parallel
    }

    pub fn ultraparallel(&self, i: usize, j: usize) -> bool {
        i != j && self.kind(i, j) == PositionKind::Ultraparallel
    }

    pub fn intersecting(&self, i: usize, j: usize) -> bool {
        i != j && self.kind(i, j) == PositionKind::Intersecting
    }
}

pub fn mutual_position(f: &FacetNormal, g: &FacetNormal) -> Result<MutualPosition> {
    if f.vector == g.vector {
        return Err(Error::IdenticalNormals(f.label.clone(), g.label.clone()));
    }
    Ok(MutualPosition::from_inner(f.vector.inner(&g.vector)?))
}

/// Outcome of the right-angle test, with the first offending pair on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightAngleCheck {
    pub right_angled: bool,
    pub counterexample: Option<(usize, usize, ExactScalar)>,
}

pub fn is_right_angled(p: &PolytopeSpec) -> RightAngleCheck {
    let n = p.len();
    let counterexample = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            (i + 1..n).find_map(|j| {
                let inner = p.facets[i].vector.inner_unchecked(&p.facets[j].vector);
                let pos = MutualPosition::from_inner(inner.clone());
                (pos.kind == PositionKind::Intersecting && !inner.is_zero()).then_some((i, j, inner))
            })
        })
        .min_by_key(|(i, j, _)| (*i, *j));
    RightAngleCheck { right_angled: counterexample.is_none(), counterexample }
}

impl RightAngleCheck {
    pub fn into_result(self, p: &PolytopeSpec) -> Result<()> {
        match self.counterexample {
            None => Ok(()),
            Some((i, j, inner)) => Err(Error::NotRightAngled {
                first: p.facets[i].label.clone(),
                second: p.facets[j].label.clone(),
                inner: inner.to_string(),
            }),
        }
    }
}

/// Generators and commuting pairs of a right-angled Coxeter group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterPresentation {
    pub generators: Vec<String>,
    /// Index pairs `(i, j)`, `i < j`, into `generators` with `(rᵢrⱼ)² = 1`.
    pub commuting_pairs: Vec<(usize, usize)>,
}

impl CoxeterPresentation {
    pub fn relation_count(&self) -> usize {
        self.generators.len() + self.commuting_pairs.len()
    }
}

pub fn coxeter_presentation(p: &PolytopeSpec) -> Result<CoxeterPresentation> {
    is_right_angled(p).into_result(p)?;
    let table = p.positions();
    Ok(presentation_on(p, &table, &(0..p.len()).collect::<Vec<_>>()))
}

/// Presentation on the facets listed in `keep`, assuming the polytope is right-angled.
pub(crate) fn presentation_on(p: &PolytopeSpec, table: &PositionTable, keep: &[usize]) -> CoxeterPresentation {
    let generators = keep.iter().map(|&i| p.facets[i].label.clone()).collect();
    let mut commuting_pairs = Vec::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate().skip(a + 1) {
            if table.orthogonal(i, j) {
                commuting_pairs.push((a, b));
            }
        }
    }
    CoxeterPresentation { generators, commuting_pairs }
}

const AXES: [char; 4] = ['X', 'Y', 'Z', 'W'];

fn sign_char(s: i64) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

/// The 48-facet right-angled 5-polytope.
///
/// Facet order: `X+, X-, Y+, …, W-`, then `S_X+, …, S_W-`, then the 32
/// `S(a)` facets with `a` running over sign vectors with exactly one zero.
pub fn build_polytope_p() -> PolytopeSpec {
    let mut facets = Vec::with_capacity(48);
    for (axis, name) in AXES.iter().enumerate() {
        for s in [1, -1] {
            let mut c = [(0, 1); 6];
            c[axis] = (s, 1);
            c[4] = (1, 1);
            c[5] = (1, 1);
            facets.push(FacetNormal::new(
                format!("{name}{}", sign_char(s)),
                Family::TypeI,
                LorentzVector::from_fracs(&c),
            ));
        }
    }
    for (axis, name) in AXES.iter().enumerate() {
        for s in [1, -1] {
            let mut c = [(0, 1); 6];
            c[axis] = (s, 1);
            c[4] = (-1, 2);
            c[5] = (1, 2);
            facets.push(FacetNormal::new(
                format!("S_{name}{}", sign_char(s)),
                Family::TypeII,
                LorentzVector::from_fracs(&c),
            ));
        }
    }
    for a in edge_sign_vectors() {
        let mut c = [(0, 1); 6];
        for k in 0..4 {
            c[k] = (a[k], 1);
        }
        c[4] = (1, 2);
        c[5] = (3, 2);
        let label = format!("S({},{},{},{})", a[0], a[1], a[2], a[3]);
        facets.push(FacetNormal::new(label, Family::TypeIII, LorentzVector::from_fracs(&c)));
    }
    PolytopeSpec::new(5, facets).expect("built-in polytope is valid")
}

/// Sign vectors in `{-1,0,1}⁴` with exactly one zero, zero position from last to first.
pub(crate) fn edge_sign_vectors() -> Vec<[i64; 4]> {
    let mut out = Vec::with_capacity(32);
    for zero in (0..4).rev() {
        for bits in 0..8u32 {
            let mut a = [0i64; 4];
            let mut b = 0;
            for (k, slot) in a.iter_mut().enumerate() {
                if k == zero {
                    continue;
                }
                *slot = if bits >> (2 - b) & 1 == 0 { 1 } else { -1 };
                b += 1;
            }
            out.push(a);
        }
    }
    out
}

/// Inner product of two built-in facets from their boundary coordinates and
/// families alone: `a·a'` shifted by 0, 1 or 2 according to the family pair.
///
/// Returns `None` if either facet carries no family tag.
pub fn family_rule_inner(f: &FacetNormal, g: &FacetNormal) -> Option<ExactScalar> {
    use Family::*;
    let shift = match (f.family.min(g.family), f.family.max(g.family)) {
        (TypeI, TypeI) | (TypeII, TypeII) => 0,
        (TypeI, TypeII) | (TypeI, TypeIII) | (TypeII, TypeIII) => 1,
        (TypeIII, TypeIII) => 2,
        _ => return None,
    };
    let dot: ExactScalar = f.a_projection().iter().zip(g.a_projection()).map(|(x, y)| x * &y).sum();
    Some(dot - ExactScalar::from_int(shift))
}

/// Values of the off-diagonal Gram entries.
pub fn off_diagonal_values(p: &PolytopeSpec) -> BTreeSet<ExactScalar> {
    let table = p.positions();
    let mut values = BTreeSet::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            values.insert(table.inner(i, j).clone());
        }
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;

    fn facet(label: &str, coords: &[i64]) -> FacetNormal {
        FacetNormal::new(label, Family::Other, LorentzVector::from_ints(coords))
    }

    #[test]
    fn built_in_polytope_shape() {
        let p = build_polytope_p();
        assert_eq!(p.len(), 48);
        assert_eq!(p.dim(), 5);
        let count = |fam| p.facets().iter().filter(|f| f.family == fam).count();
        assert_eq!((count(Family::TypeI), count(Family::TypeII), count(Family::TypeIII)), (8, 8, 32));
        let x = p.facet(p.index_of("X+").unwrap()).unwrap();
        assert_eq!(x.vector(), &LorentzVector::from_ints(&[1, 0, 0, 0, 1, 1]));
        let s = p.facet(p.index_of("S_W-").unwrap()).unwrap();
        assert_eq!(s.vector(), &LorentzVector::from_fracs(&[(0, 1), (0, 1), (0, 1), (-1, 1), (-1, 2), (1, 2)]));
        assert!(p.index_of("S(1,1,1,0)").is_ok());
        assert!(p.index_of("S(0,-1,1,-1)").is_ok());
        assert!(p.facets().iter().all(|f| f.vector().norm().is_one()));
        assert!(p.spans());
    }

    #[test]
    fn position_examples() {
        let p = build_polytope_p();
        let get = |l: &str| p.facet(p.index_of(l).unwrap()).unwrap();
        let xy = mutual_position(get("X+"), get("Y+")).unwrap();
        assert_eq!(xy.kind, PositionKind::Intersecting);
        assert_eq!(xy.cos_angle, Some(ExactScalar::zero()));
        let xx = mutual_position(get("X+"), get("X-")).unwrap();
        assert_eq!((xx.kind, xx.inner), (PositionKind::Parallel, ExactScalar::from_int(-1)));
        let xs = mutual_position(get("X+"), get("S_X-")).unwrap();
        assert_eq!((xs.kind, xs.inner), (PositionKind::Ultraparallel, ExactScalar::from_int(-2)));
        assert!(xs.cos_angle.is_none());
        assert!(mutual_position(get("X+"), get("X+")).is_err());
    }

    #[test]
    fn non_right_angle_detected() {
        let a = facet("a", &[1, 0, 0]);
        // angle π/3 with `a`
        let b = FacetNormal::new("b", Family::Other, LorentzVector::from_fracs(&[(-1, 2), (1, 1), (1, 2)]));
        let p = PolytopeSpec::new(2, vec![a.clone(), b]).unwrap();
        let check = p.is_right_angled();
        assert!(!check.right_angled);
        assert_eq!(check.counterexample, Some((0, 1, ExactScalar::from_frac(-1, 2))));
        assert!(matches!(check.into_result(&p), Err(Error::NotRightAngled { .. })));
        assert!(coxeter_presentation(&p).is_err());

        let single = PolytopeSpec::new(2, vec![a]).unwrap();
        assert!(single.is_right_angled().right_angled);
    }

    #[test]
    fn rejects_bad_facets() {
        assert!(matches!(PolytopeSpec::new(2, vec![facet("a", &[1, 1, 0])]), Err(Error::NotUnitFacet { .. })));
        assert!(matches!(
            PolytopeSpec::new(2, vec![facet("a", &[1, 0, 0]), facet("b", &[1, 0, 0])]),
            Err(Error::IdenticalNormals(..))
        ));
        assert!(matches!(PolytopeSpec::new(3, vec![facet("a", &[1, 0, 0])]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn presentation_small_cases() {
        let a = facet("a", &[1, 0, 0]);
        let ultra = FacetNormal::new("u", Family::Other, LorentzVector::from_fracs(&[(-5, 4), (0, 1), (3, 4)]));
        let p = PolytopeSpec::new(2, vec![a.clone(), ultra]).unwrap();
        let pres = coxeter_presentation(&p).unwrap();
        assert_eq!(pres.generators, vec!["a", "u"]);
        assert!(pres.commuting_pairs.is_empty());

        let p = PolytopeSpec::new(2, vec![a, facet("b", &[0, 1, 0])]).unwrap();
        assert_eq!(coxeter_presentation(&p).unwrap().commuting_pairs, vec![(0, 1)]);
    }

    #[test]
    fn json_roundtrip() {
        let p = build_polytope_p();
        let text = p.to_json_string();
        assert!(text.contains("\"label\": \"X+\""));
        assert!(text.contains("\"family\": \"III\""));
        let q = PolytopeSpec::from_json_str(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn edge_vectors_are_distinct() {
        let v = edge_sign_vectors();
        let set: BTreeSet<_> = v.iter().collect();
        assert_eq!(set.len(), 32);
        assert_eq!(v[0], [1, 1, 1, 0]);
    }
}
