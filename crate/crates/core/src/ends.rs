//! Sets of pairwise disjoint facets, the groups obtained by removing them,
//! and the rank audit of the linear conditions that pin each remaining wall.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lorentz::{span_rank, LorentzVector};
use crate::polytope::{presentation_on, CoxeterPresentation, Family, PolytopeSpec, PositionTable};
use crate::symmetry::SymmetryGroup;

/// Which pairs of facets count as disjoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DisjointMode {
    /// Ultraparallel pairs only.
    #[default]
    Strict,
    /// Parallel or ultraparallel pairs; parallel walls meet only at infinity.
    Weak,
}

impl DisjointMode {
    pub fn admits(self, table: &PositionTable, i: usize, j: usize) -> bool {
        match self {
            DisjointMode::Strict => table.ultraparallel(i, j),
            DisjointMode::Weak => table.ultraparallel(i, j) || table.parallel(i, j),
        }
    }
}

impl fmt::Display for DisjointMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DisjointMode::Strict => "strict",
            DisjointMode::Weak => "weak",
        })
    }
}

impl FromStr for DisjointMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(DisjointMode::Strict),
            "weak" => Ok(DisjointMode::Weak),
            other => Err(Error::InvalidSelection(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetSelection {
    removed: Vec<usize>,
    mode: DisjointMode,
}

impl FacetSelection {
    /// Validates that the removed facets are pairwise disjoint under `mode`.
    pub fn new(p: &PolytopeSpec, mut removed: Vec<usize>, mode: DisjointMode) -> Result<Self> {
        removed.sort_unstable();
        removed.dedup();
        for &i in &removed {
            p.facet(i)?;
        }
        let table = p.positions();
        if let Some((i, j)) = first_conflict(&table, &removed, mode) {
            return Err(Error::InvalidSelection(format!(
                "{} and {} are not disjoint in {mode} mode",
                p.facets()[i].label,
                p.facets()[j].label
            )));
        }
        Ok(Self { removed, mode })
    }

    pub fn from_labels(p: &PolytopeSpec, labels: &[&str], mode: DisjointMode) -> Result<Self> {
        let idx = labels.iter().map(|l| p.index_of(l)).collect::<Result<Vec<_>>>()?;
        Self::new(p, idx, mode)
    }

    pub fn empty(mode: DisjointMode) -> Self {
        Self { removed: Vec::new(), mode }
    }

    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    pub fn mode(&self) -> DisjointMode {
        self.mode
    }

    pub fn contains(&self, i: usize) -> bool {
        self.removed.binary_search(&i).is_ok()
    }

    pub fn labels(&self, p: &PolytopeSpec) -> Vec<String> {
        self.removed.iter().map(|&i| p.facets()[i].label.clone()).collect()
    }
}

/// The first pair in `set` that is not disjoint under `mode`.
pub fn first_conflict(table: &PositionTable, set: &[usize], mode: DisjointMode) -> Option<(usize, usize)> {
    set.iter()
        .enumerate()
        .find_map(|(a, &i)| set[a + 1..].iter().find(|&&j| !mode.admits(table, i, j)).map(|&j| (i, j)))
}

pub fn disjointness_graph(p: &PolytopeSpec, mode: DisjointMode) -> Graph {
    let table = p.positions();
    Graph::from_predicate(p.len(), |i, j| mode.admits(&table, i, j))
}

/// The lexicographically least image of a sorted set under the group.
pub fn orbit_representative(set: &[usize], group: &SymmetryGroup) -> Vec<usize> {
    group
        .elements
        .iter()
        .map(|g| {
            let mut image: Vec<usize> = set.iter().map(|&i| g.apply(i)).collect();
            image.sort_unstable();
            image
        })
        .min()
        .unwrap_or_else(|| set.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSet {
    pub selection: FacetSelection,
    pub orbit_representative: Vec<usize>,
}

/// Every inclusion-maximal pairwise disjoint facet set, each tagged with the
/// least member of its orbit under `group`.
pub fn maximal_disjoint_sets(p: &PolytopeSpec, mode: DisjointMode, group: &SymmetryGroup) -> Vec<MaximalSet> {
    disjointness_graph(p, mode)
        .maximal_cliques()
        .into_par_iter()
        .map(|c| MaximalSet {
            orbit_representative: orbit_representative(&c, group),
            selection: FacetSelection { removed: c, mode },
        })
        .collect()
}

/// Whether `set` is pairwise disjoint and no further facet can be added.
pub fn is_maximal(table: &PositionTable, set: &[usize], mode: DisjointMode) -> bool {
    first_conflict(table, set, mode).is_none()
        && (0..table.len()).all(|g| set.contains(&g) || set.iter().any(|&i| !mode.admits(table, i, g)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub representative: Vec<String>,
    pub size: usize,
    pub removed_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndsCensus {
    pub mode: DisjointMode,
    pub maximal_set_count: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitRecord>,
}

pub fn census(p: &PolytopeSpec, sets: &[MaximalSet], mode: DisjointMode) -> EndsCensus {
    let mut by_rep: BTreeMap<&[usize], usize> = BTreeMap::new();
    for s in sets {
        *by_rep.entry(&s.orbit_representative).or_default() += 1;
    }
    let orbits: Vec<OrbitRecord> = by_rep
        .into_iter()
        .map(|(rep, size)| OrbitRecord {
            representative: rep.iter().map(|&i| p.facets()[i].label.clone()).collect(),
            size,
            removed_count: rep.len(),
        })
        .collect();
    EndsCensus { mode, maximal_set_count: sets.len(), orbit_count: orbits.len(), orbits }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndsPresentation {
    pub presentation: CoxeterPresentation,
    /// Labels of the removed facets, which become the totally geodesic boundary.
    pub boundary: Vec<String>,
}

pub fn ends_presentation(p: &PolytopeSpec, f: &FacetSelection) -> Result<EndsPresentation> {
    // re-validate: selections can be built for another polytope
    let f = FacetSelection::new(p, f.removed.clone(), f.mode)?;
    let table = p.positions();
    let keep: Vec<usize> = (0..p.len()).filter(|&i| !f.contains(i)).collect();
    Ok(EndsPresentation { presentation: presentation_on(p, &table, &keep), boundary: f.labels(p) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditRole {
    /// Part of the type I / type II block fixed up to isometry beforehand.
    Anchor,
    Target,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminationRecord {
    pub facet: String,
    pub role: AuditRole,
    /// Anchored walls orthogonal to this one.
    pub fixed_neighbors_used: Vec<String>,
    /// Anchored walls parallel to this one, used only when orthogonality falls short.
    pub tangent_neighbors_used: Vec<String>,
    /// Rank of the linear part of the constraints; `None` for anchors.
    pub constraint_rank: Option<usize>,
    pub locally_determined: bool,
    pub used_tangency: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminationReport {
    pub mode: DisjointMode,
    pub removed: Vec<String>,
    pub records: Vec<DeterminationRecord>,
    pub all_determined: bool,
    pub tangency_used: usize,
}

/// Shared memo of target audits, keyed by target and usable anchors.
#[derive(Default)]
pub struct AuditCache {
    memo: HashMap<(usize, Vec<usize>), TargetAudit>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct TargetAudit {
    orthogonal: Vec<usize>,
    tangent: Vec<usize>,
    rank: usize,
}

fn is_anchor_family(f: Family) -> bool {
    matches!(f, Family::TypeI | Family::TypeII)
}

fn audit_target(
    vectors: &[LorentzVector],
    table: &PositionTable,
    d: usize,
    target: usize,
    anchors: &[usize],
) -> TargetAudit {
    let orthogonal: Vec<usize> = anchors.iter().copied().filter(|&a| table.orthogonal(target, a)).collect();
    let rows: Vec<LorentzVector> = orthogonal.iter().map(|&a| vectors[a].clone()).collect();
    let mut rank = span_rank(&rows).unwrap_or(0);
    let mut tangent = Vec::new();
    if rank < d {
        let mut rows = rows;
        for &a in anchors.iter().filter(|&&a| table.parallel(target, a)) {
            rows.push(vectors[a].clone());
            let r = span_rank(&rows).unwrap_or(0);
            if r > rank {
                rank = r;
                tangent.push(a);
                if rank >= d {
                    break;
                }
            } else {
                rows.pop();
            }
        }
    }
    TargetAudit { orthogonal, tangent, rank }
}

impl AuditCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Audits several selections, solving each distinct (target, anchors) system once.
    pub fn audit_many(&mut self, p: &PolytopeSpec, selections: &[FacetSelection]) -> Vec<DeterminationReport> {
        let table = p.positions();
        let vectors = p.vectors();
        let d = p.dim();
        let keys: Vec<(usize, Vec<usize>)> = selections
            .iter()
            .flat_map(|f| {
                let anchors = anchors_for(p, f);
                targets_for(p, f).into_iter().map(move |t| (t, anchors.clone()))
            })
            .filter(|k| !self.memo.contains_key(k))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let solved: Vec<_> = keys
            .into_par_iter()
            .map(|(t, anchors)| {
                let audit = audit_target(&vectors, &table, d, t, &anchors);
                ((t, anchors), audit)
            })
            .collect();
        self.memo.extend(solved);
        selections.iter().map(|f| self.report(p, f)).collect()
    }

    pub fn audit(&mut self, p: &PolytopeSpec, f: &FacetSelection) -> DeterminationReport {
        self.audit_many(p, std::slice::from_ref(f)).pop().expect("one report")
    }

    fn report(&self, p: &PolytopeSpec, f: &FacetSelection) -> DeterminationReport {
        let d = p.dim();
        let label = |i: usize| p.facets()[i].label.clone();
        let anchors = anchors_for(p, f);
        let mut records: Vec<DeterminationRecord> = anchors
            .iter()
            .map(|&a| DeterminationRecord {
                facet: label(a),
                role: AuditRole::Anchor,
                fixed_neighbors_used: Vec::new(),
                tangent_neighbors_used: Vec::new(),
                constraint_rank: None,
                locally_determined: true,
                used_tangency: false,
            })
            .collect();
        for t in targets_for(p, f) {
            let audit = &self.memo[&(t, anchors.clone())];
            records.push(DeterminationRecord {
                facet: label(t),
                role: AuditRole::Target,
                fixed_neighbors_used: audit.orthogonal.iter().map(|&i| label(i)).collect(),
                tangent_neighbors_used: audit.tangent.iter().map(|&i| label(i)).collect(),
                constraint_rank: Some(audit.rank),
                locally_determined: audit.rank >= d,
                used_tangency: !audit.tangent.is_empty(),
            });
        }
        DeterminationReport {
            mode: f.mode,
            removed: f.labels(p),
            all_determined: records.iter().all(|r| r.locally_determined),
            tangency_used: records.iter().filter(|r| r.used_tangency).count(),
            records,
        }
    }
}

fn anchors_for(p: &PolytopeSpec, f: &FacetSelection) -> Vec<usize> {
    (0..p.len()).filter(|&i| is_anchor_family(p.facets()[i].family) && !f.contains(i)).collect()
}

fn targets_for(p: &PolytopeSpec, f: &FacetSelection) -> Vec<usize> {
    (0..p.len()).filter(|&i| !is_anchor_family(p.facets()[i].family) && !f.contains(i)).collect()
}

/// Rank audit for a single selection.
///
/// The type I and type II walls outside `F` are taken as fixed. Every other
/// wall outside `F` is constrained by `⟨u, n⟩ = 0` for each fixed wall `n`
/// orthogonal to it; if those conditions have rank below `d`, tangency
/// conditions `⟨u, n⟩ = -1` to fixed parallel walls are added and flagged.
pub fn determination_audit(p: &PolytopeSpec, f: &FacetSelection) -> DeterminationReport {
    AuditCache::new().audit(p, f)
}

/// Whether the true normal satisfies every constraint recorded for it.
pub fn constraints_hold(p: &PolytopeSpec, record: &DeterminationRecord) -> Result<bool> {
    let u = p.facet(p.index_of(&record.facet)?)?.vector().clone();
    let mut ok = true;
    for l in &record.fixed_neighbors_used {
        ok &= u.inner(p.facet(p.index_of(l)?)?.vector())?.is_zero();
    }
    for l in &record.tangent_neighbors_used {
        ok &= (-u.inner(p.facet(p.index_of(l)?)?.vector())?).is_one();
    }
    Ok(ok)
}
