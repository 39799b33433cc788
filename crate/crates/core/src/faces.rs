//! Vertex enumeration, ridge counts, face numbers and the finite-volume
//! certificate.
//!
//! Vertices are found by solving every `d`-subset of facet normals for its
//! common Lorentz-orthogonal ray. A subset containing an ultraparallel pair is
//! skipped without solving: a time-like or light-like ray orthogonal to two
//! unit normals forces `|⟨vᵢ, vⱼ⟩| ≤ 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lorentz::{solve_kernel, span_rank, ExactScalar, LorentzVector};
use crate::polytope::{is_right_angled, PolytopeSpec, PositionTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Finite,
    Ideal,
}

/// A finite (time-like) or ideal (light-like) vertex of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRay {
    /// Primitive representative with positive last coordinate.
    pub direction: LorentzVector,
    pub kind: VertexKind,
    /// Sorted indices of facets whose hyperplanes contain the vertex.
    pub incident_facets: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip subsets containing an ultraparallel pair before solving.
    pub prune_ultraparallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { prune_ultraparallel: true }
    }
}

fn check_preconditions(p: &PolytopeSpec) -> Result<()> {
    is_right_angled(p).into_result(p)?;
    p.require_spanning()
}

pub fn enumerate_vertices(p: &PolytopeSpec) -> Result<Vec<VertexRay>> {
    enumerate_vertices_with(p, SearchOptions::default())
}

pub fn enumerate_vertices_with(p: &PolytopeSpec, opts: SearchOptions) -> Result<Vec<VertexRay>> {
    check_preconditions(p)?;
    let table = p.positions();
    Ok(vertices_from_table(p, &table, opts))
}

pub(crate) fn vertices_from_table(p: &PolytopeSpec, table: &PositionTable, opts: SearchOptions) -> Vec<VertexRay> {
    let n = p.len();
    let d = p.dim();
    let vectors = p.vectors();
    let allowed = Graph::from_predicate(n, |i, j| !(opts.prune_ultraparallel && table.ultraparallel(i, j)));

    let rays: BTreeSet<LorentzVector> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut found = BTreeSet::new();
            let mut subset = vec![first];
            let mut cand = allowed.neighbors(first).clone();
            cand.set_range(..first + 1, false);
            visit_subsets(&allowed, d, &mut subset, &cand, &mut |s| {
                if let Some(ray) = solve_subset(&vectors, s) {
                    found.insert(ray);
                }
            });
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    rays.into_iter()
        .filter_map(|ray| {
            let mut incident = Vec::new();
            for (j, v) in vectors.iter().enumerate() {
                match ray.inner_unchecked(v).signum() {
                    0 => incident.push(j),
                    1 => return None,
                    _ => {}
                }
            }
            let kind = if ray.norm().is_zero() { VertexKind::Ideal } else { VertexKind::Finite };
            Some(VertexRay { direction: ray, kind, incident_facets: incident })
        })
        .collect()
}

fn visit_subsets(g: &Graph, k: usize, subset: &mut Vec<usize>, cand: &FixedBitSet, f: &mut impl FnMut(&[usize])) {
    if subset.len() == k {
        f(subset);
        return;
    }
    for v in cand.ones() {
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        next.set_range(..v + 1, false);
        subset.push(v);
        visit_subsets(g, k, subset, &next, f);
        subset.pop();
    }
}

/// The canonical ray orthogonal to the given normals, if their complement is
/// a single non-space-like line and the ray lies in every half-space.
fn solve_subset(vectors: &[LorentzVector], subset: &[usize]) -> Option<LorentzVector> {
    let chosen: Vec<LorentzVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
    let kernel = solve_kernel(&chosen).ok()?;
    if kernel.len() != 1 {
        return None;
    }
    let k = &kernel[0];
    if k.norm().is_positive() {
        return None;
    }
    let ray = k.normalized_ray()?;
    vectors.iter().all(|v| !ray.inner_unchecked(v).is_positive()).then_some(ray)
}

/// Number of facets meeting facet `index`; in a right-angled polytope each
/// such intersection is a ridge.
pub fn ridge_count(p: &PolytopeSpec, index: usize) -> Result<usize> {
    let f = p.facet(index)?;
    let one = ExactScalar::one();
    Ok(p.facets()
        .iter()
        .enumerate()
        .filter(|&(j, g)| j != index && f.vector().inner_unchecked(g.vector()).abs() < one)
        .count())
}

/// Splits an ideal vertex's incident set into parallel pairs that are
/// orthogonal across pairs, the link of a Euclidean box.
pub fn box_link_pairs(table: &PositionTable, incident: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for (a, &i) in incident.iter().enumerate() {
        let partners: Vec<usize> = incident.iter().copied().filter(|&j| table.parallel(i, j)).collect();
        if partners.len() != 1 {
            return None;
        }
        let others_orthogonal = incident.iter().all(|&j| j == i || j == partners[0] || table.orthogonal(i, j));
        if !others_orthogonal {
            return None;
        }
        if incident[..a].contains(&partners[0]) {
            continue;
        }
        pairs.push((i, partners[0]));
    }
    Some(pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeDiagnostic {
    pub method: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeCertificate {
    pub finite_volume: bool,
    pub method_combinatorial: bool,
    pub method_ray_oracle: bool,
    pub ideal_vertex_count: usize,
    pub finite_vertex_count: usize,
    pub failures: Vec<VolumeDiagnostic>,
}

/// Certifies finite volume in two ways and fails hard if they disagree.
///
/// The ray oracle works on enumerated vertices: every edge (a set of `d - 1`
/// pairwise orthogonal facets inside some vertex's incident set) must end in
/// exactly two vertices. The combinatorial method works on the Gram matrix
/// alone: every `d - 1` pairwise orthogonal facets must extend in exactly two
/// ways to either `d` pairwise orthogonal facets or `d - 1` parallel pairs
/// that are orthogonal across pairs. It additionally requires the diagram and
/// the rays to agree on which of those extensions exist.
///
/// Normals that fail to span are accepted here and simply yield no vertices.
pub fn finite_volume_certificate(p: &PolytopeSpec) -> Result<VolumeCertificate> {
    is_right_angled(p).into_result(p)?;
    let table = p.positions();
    let vertices = vertices_from_table(p, &table, SearchOptions::default());
    certificate_from_vertices(p, &table, &vertices)
}

pub(crate) fn certificate_from_vertices(
    p: &PolytopeSpec,
    table: &PositionTable,
    vertices: &[VertexRay],
) -> Result<VolumeCertificate> {
    let d = p.dim();
    let n = p.len();
    let label = |i: usize| p.facets()[i].label.as_str();
    let set_label = |s: &[usize]| s.iter().map(|&i| label(i)).collect::<Vec<_>>().join(",");
    let mut failures = Vec::new();
    let orth = Graph::from_predicate(n, |i, j| table.orthogonal(i, j));

    // ray oracle
    let mut ray_ok = !vertices.is_empty();
    if vertices.is_empty() {
        failures.push(VolumeDiagnostic { method: "ray".into(), detail: "no vertices".into() });
    }
    let mut edge_hits: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for v in vertices {
        let sub = induced(&orth, &v.incident_facets);
        for local in sub.cliques_of_size(d - 1) {
            let edge: Vec<usize> = local.iter().map(|&k| v.incident_facets[k]).collect();
            *edge_hits.entry(edge).or_default() += 1;
        }
    }
    for (edge, hits) in &edge_hits {
        if *hits != 2 {
            ray_ok = false;
            failures.push(VolumeDiagnostic {
                method: "ray".into(),
                detail: format!("edge {{{}}} has {hits} endpoint(s)", set_label(edge)),
            });
        }
    }

    // combinatorial
    let elliptic_top: Vec<Vec<usize>> = orth.cliques_of_size(d);
    let parabolic = parabolic_subdiagrams(table, n, d - 1);
    let mut comb_ok = !(elliptic_top.is_empty() && parabolic.is_empty());
    if !comb_ok {
        failures.push(VolumeDiagnostic {
            method: "combinatorial".into(),
            detail: "no elliptic or parabolic subdiagram of full rank".into(),
        });
    }
    let mut extensions: HashMap<Vec<usize>, usize> = HashMap::new();
    for top in elliptic_top.iter().chain(&parabolic) {
        let sub = induced(&orth, top);
        for local in sub.cliques_of_size(d - 1) {
            let edge: Vec<usize> = local.iter().map(|&k| top[k]).collect();
            *extensions.entry(edge).or_default() += 1;
        }
    }
    for edge in orth.cliques_of_size(d - 1) {
        let count = extensions.get(&edge).copied().unwrap_or(0);
        if count != 2 {
            comb_ok = false;
            failures.push(VolumeDiagnostic {
                method: "combinatorial".into(),
                detail: format!("elliptic subdiagram {{{}}} extends {count} time(s)", set_label(&edge)),
            });
        }
    }
    let finite_sets: HashSet<&[usize]> =
        vertices.iter().filter(|v| v.kind == VertexKind::Finite).map(|v| v.incident_facets.as_slice()).collect();
    for top in &elliptic_top {
        if !finite_sets.contains(top.as_slice()) {
            comb_ok = false;
            failures.push(VolumeDiagnostic {
                method: "combinatorial".into(),
                detail: format!("orthogonal set {{{}}} is not a finite vertex", set_label(top)),
            });
        }
    }
    for v in vertices.iter().filter(|v| v.kind == VertexKind::Ideal) {
        let boxed = box_link_pairs(table, &v.incident_facets).is_some_and(|pairs| pairs.len() == d - 1);
        if !boxed {
            comb_ok = false;
            failures.push(VolumeDiagnostic {
                method: "combinatorial".into(),
                detail: format!("ideal vertex {} has no box link", v.direction),
            });
        }
    }

    if comb_ok != ray_ok {
        let diagnostics =
            failures.iter().map(|f| format!("[{}] {}", f.method, f.detail)).collect::<Vec<_>>().join("; ");
        return Err(Error::VolumeMethodsDisagree { combinatorial: comb_ok, ray_oracle: ray_ok, diagnostics });
    }
    Ok(VolumeCertificate {
        finite_volume: comb_ok && ray_ok,
        method_combinatorial: comb_ok,
        method_ray_oracle: ray_ok,
        ideal_vertex_count: vertices.iter().filter(|v| v.kind == VertexKind::Ideal).count(),
        finite_vertex_count: vertices.iter().filter(|v| v.kind == VertexKind::Finite).count(),
        failures,
    })
}

fn induced(g: &Graph, vertices: &[usize]) -> Graph {
    Graph::from_predicate(vertices.len(), |a, b| g.has_edge(vertices[a], vertices[b]))
}

/// Unions of `rank` parallel pairs, orthogonal across pairs; each sorted.
fn parabolic_subdiagrams(table: &PositionTable, n: usize, rank: usize) -> Vec<Vec<usize>> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| table.parallel(i, j)).collect();
    let compatible = Graph::from_predicate(pairs.len(), |a, b| {
        let (p, q) = (pairs[a], pairs[b]);
        [p.0, p.1].iter().all(|&i| [q.0, q.1].iter().all(|&j| table.orthogonal(i, j)))
    });
    let mut out: Vec<Vec<usize>> = compatible
        .cliques_of_size(rank)
        .into_iter()
        .map(|c| {
            let mut s: Vec<usize> = c.iter().flat_map(|&k| [pairs[k].0, pairs[k].1]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Number of `k`-faces for `k = 0, …, d - 1`, from the closure of vertex
/// incidence sets under intersection.
pub fn f_vector(p: &PolytopeSpec) -> Result<Vec<usize>> {
    let cert = finite_volume_certificate(p)?;
    if !cert.finite_volume {
        return Err(Error::InfiniteVolume);
    }
    let table = p.positions();
    let vertices = vertices_from_table(p, &table, SearchOptions::default());
    Ok(f_vector_from_vertices(p, &vertices))
}

pub(crate) fn f_vector_from_vertices(p: &PolytopeSpec, vertices: &[VertexRay]) -> Vec<usize> {
    let n = p.len();
    let d = p.dim();
    let vectors = p.vectors();
    let to_bits = |s: &[usize]| {
        let mut b = FixedBitSet::with_capacity(n);
        s.iter().for_each(|&i| b.insert(i));
        b
    };
    let vertex_sets: Vec<FixedBitSet> = vertices.iter().map(|v| to_bits(&v.incident_facets)).collect();
    let mut faces: HashSet<FixedBitSet> = vertex_sets.iter().cloned().collect();
    let mut frontier: Vec<FixedBitSet> = faces.iter().cloned().collect();
    while !frontier.is_empty() {
        let fresh: HashSet<FixedBitSet> = frontier
            .par_iter()
            .flat_map_iter(|f| {
                vertex_sets.iter().filter_map(move |v| {
                    let mut meet = f.clone();
                    meet.intersect_with(v);
                    (!meet.is_clear()).then_some(meet)
                })
            })
            .collect();
        frontier = fresh.into_iter().filter(|f| !faces.contains(f)).collect();
        faces.extend(frontier.iter().cloned());
    }
    let mut counts = vec![0; d];
    let ranks: Vec<usize> = faces
        .par_iter()
        .map(|f| {
            let vs: Vec<LorentzVector> = f.ones().map(|i| vectors[i].clone()).collect();
            span_rank(&vs).unwrap_or(0)
        })
        .collect();
    for r in ranks {
        if (1..=d).contains(&r) {
            counts[d - r] += 1;
        }
    }
    counts
}

/// Machine-readable vertex report entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub direction: Vec<ExactScalar>,
    pub kind: VertexKind,
    pub incident: Vec<String>,
}

pub fn vertex_report(p: &PolytopeSpec, vertices: &[VertexRay]) -> Vec<VertexRecord> {
    vertices
        .iter()
        .map(|v| VertexRecord {
            direction: v.direction.coords().to_vec(),
            kind: v.kind,
            incident: v.incident_facets.iter().map(|&i| p.facets()[i].label.clone()).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::fixtures::{ideal_triangle, right_angled_pentagon as pentagon, ultraparallel_strip};

    #[test]
    fn ideal_triangle_vertices() {
        let p = ideal_triangle();
        let vs = enumerate_vertices(&p).unwrap();
        assert_eq!(vs.len(), 3);
        assert!(vs.iter().all(|v| v.kind == VertexKind::Ideal && v.incident_facets.len() == 2));
        assert!(vs.iter().any(|v| v.direction == LorentzVector::from_ints(&[0, 1, 1])));
        let cert = finite_volume_certificate(&p).unwrap();
        assert!(cert.finite_volume);
        assert_eq!((cert.ideal_vertex_count, cert.finite_vertex_count), (3, 0));
        assert_eq!(f_vector(&p).unwrap(), vec![3, 3]);
    }

    #[test]
    fn ultraparallel_strip_is_infinite() {
        let p = ultraparallel_strip();
        assert!(matches!(enumerate_vertices(&p), Err(Error::NotSpanning(_))));
        let cert = finite_volume_certificate(&p).unwrap();
        assert!(!cert.finite_volume);
        assert_eq!(cert.ideal_vertex_count + cert.finite_vertex_count, 0);
        assert!(matches!(f_vector(&p), Err(Error::InfiniteVolume)));
    }

    #[test]
    fn right_angled_pentagon() {
        let p = pentagon();
        let vs = enumerate_vertices(&p).unwrap();
        assert_eq!(vs.len(), 5);
        assert!(vs.iter().all(|v| v.kind == VertexKind::Finite));
        let cert = finite_volume_certificate(&p).unwrap();
        assert!(cert.finite_volume && cert.method_combinatorial && cert.method_ray_oracle);
        assert_eq!(f_vector(&p).unwrap(), vec![5, 5]);
    }

    #[test]
    fn exhaustive_search_agrees_on_fixtures() {
        for p in [ideal_triangle(), pentagon()] {
            let pruned = enumerate_vertices(&p).unwrap();
            let full = enumerate_vertices_with(&p, SearchOptions { prune_ultraparallel: false }).unwrap();
            assert_eq!(pruned, full);
        }
    }

    #[test]
    fn polytope_p_vertices() {
        let p = crate::polytope::build_polytope_p();
        let vs = enumerate_vertices(&p).unwrap();
        let top = vs.iter().find(|v| v.direction == LorentzVector::from_ints(&[0, 0, 0, 0, 1, 1])).unwrap();
        assert_eq!(top.kind, VertexKind::Ideal);
        assert_eq!(top.incident_facets, (0..8).collect::<Vec<_>>());
        let labels = ["X+", "Y+", "Z+", "W+", "S(0,1,1,1)", "S(1,0,1,1)", "S(1,1,0,1)", "S(1,1,1,0)"];
        let mut want: Vec<usize> = labels.iter().map(|l| p.index_of(l).unwrap()).collect();
        want.sort_unstable();
        assert!(vs.iter().any(|v| v.kind == VertexKind::Ideal && v.incident_facets == want));
        let table = p.positions();
        for v in vs.iter().filter(|v| v.kind == VertexKind::Ideal) {
            assert_eq!(v.incident_facets.len(), 8);
            assert_eq!(box_link_pairs(&table, &v.incident_facets).unwrap().len(), 4);
        }
        let cert = certificate_from_vertices(&p, &table, &vs).unwrap();
        assert!(cert.finite_volume, "{:?}", cert.failures);
        let f = f_vector_from_vertices(&p, &vs);
        assert_eq!(f[4], 48);
        eprintln!("P: {} ideal, {} finite, f = {:?}", cert.ideal_vertex_count, cert.finite_vertex_count, f);
    }

    #[test]
    fn box_link_detection() {
        let p = crate::polytope::build_polytope_p();
        let table = p.positions();
        let type_one: Vec<usize> = (0..8).collect();
        let pairs = box_link_pairs(&table, &type_one).unwrap();
        assert_eq!(pairs, vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
        assert!(box_link_pairs(&table, &[0, 1, 8]).is_none());
    }

    #[test]
    fn ridge_counts_and_range() {
        let p = crate::polytope::build_polytope_p();
        // 6 neighbouring cubes, the coinciding cube of the other family, 12 edges
        assert_eq!(ridge_count(&p, p.index_of("X+").unwrap()).unwrap(), 19);
        assert_eq!(ridge_count(&p, p.index_of("S_X+").unwrap()).unwrap(), 19);
        // 6 edges through the two endpoints, 3 cubes of each family
        assert_eq!(ridge_count(&p, p.index_of("S(1,1,1,0)").unwrap()).unwrap(), 12);
        assert!(matches!(ridge_count(&p, 48), Err(Error::IndexOutOfRange { index: 48, len: 48 })));
    }
}
