//! Verification commands behind the `racg` binary, each producing a
//! [`RunReport`] with named checks and a JSON payload.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cube::verify_cube_correspondence;
use crate::ends::{
    census, first_conflict, is_maximal, maximal_disjoint_sets, AuditCache, DisjointMode, FacetSelection,
};
use crate::error::{Error, Result};
use crate::faces::{
    box_link_pairs, certificate_from_vertices, f_vector_from_vertices, ridge_count, vertex_report, vertices_from_table,
    SearchOptions, VertexKind,
};
use crate::lorentz::{ExactScalar, LorentzVector};
use crate::models::{boundary_point_exact, footprint_catalog, isometry_check, verify_standard_configuration};
use crate::polytope::{build_polytope_p, is_right_angled, off_diagonal_values, Family, PolytopeSpec};
use crate::symmetry::{
    automorphisms, cube_action, cube_swap_mirror, cube_symmetry_count, group_report, realize_all,
    reflection_permutation, verify_facet_class_preservation, SymmetryGroup,
};

const GOLDEN: &str = include_str!("../golden/values.json");

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Golden {
    pub vertices: GoldenVertices,
    pub f_vector: Vec<usize>,
    pub census: BTreeMap<DisjointMode, GoldenCensus>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct GoldenVertices {
    pub ideal: usize,
    pub finite: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct GoldenCensus {
    pub maximal_sets: usize,
    pub orbits: usize,
}

/// Recorded values for the built-in polytope that have no independent source.
pub fn golden() -> Golden {
    serde_json::from_str(GOLDEN).expect("golden file parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, actual: T, expected: T) -> Self {
        let pass = actual == expected;
        let detail = if pass { format!("{actual:?}") } else { format!("got {actual:?}, expected {expected:?}") };
        Self::new(name, pass, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the canonical JSON of the input polytope.
    pub input_digest: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Known inconsistencies in the source material, reported but not failed.
    pub notes: Vec<String>,
    pub output: Value,
    /// Left out of the JSON so reports on equal input are byte-identical.
    #[serde(skip)]
    pub duration: Duration,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// Plain-text table of checks.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(s, "{}  {:<width$}  {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        for n in &self.notes {
            let _ = writeln!(s, "NOTE  {n}");
        }
        let _ = writeln!(
            s,
            "{}: {} ({} checks, {:.2?})",
            self.command,
            if self.pass { "pass" } else { "fail" },
            self.checks.len(),
            self.duration
        );
        s
    }
}

pub fn digest(p: &PolytopeSpec) -> String {
    let hash = Sha256::digest(p.to_json_string().as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    GenP,
    Gram,
    CheckRightAngled,
    CubeCorrespondence,
    Ridges { facet: Option<String> },
    Vertices,
    FiniteVolume,
    Symmetries,
    ClassPreservation,
    Ends { mode: DisjointMode },
    Audit { remove: Option<Vec<String>>, mode: DisjointMode },
    Footprints,
    VerifyAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::GenP => "gen-p",
            Command::Gram => "gram",
            Command::CheckRightAngled => "check-right-angled",
            Command::CubeCorrespondence => "verify-cube-diagram",
            Command::Ridges { .. } => "ridges",
            Command::Vertices => "vertices",
            Command::FiniteVolume => "finite-volume",
            Command::Symmetries => "symmetries",
            Command::ClassPreservation => "verify-classes",
            Command::Ends { .. } => "ends",
            Command::Audit { .. } => "audit",
            Command::Footprints => "footprints",
            Command::VerifyAll => "verify-all",
        }
    }
}

/// Accumulates checks, notes and output sections for one run.
struct Run<'a> {
    p: &'a PolytopeSpec,
    builtin: bool,
    checks: Vec<Check>,
    notes: Vec<String>,
    output: serde_json::Map<String, Value>,
    group: Option<SymmetryGroup>,
}

impl<'a> Run<'a> {
    fn new(p: &'a PolytopeSpec) -> Self {
        Self {
            p,
            builtin: *p == build_polytope_p(),
            checks: Vec::new(),
            notes: Vec::new(),
            output: serde_json::Map::new(),
            group: None,
        }
    }

    fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn put(&mut self, key: &str, value: impl Serialize) -> Result<()> {
        self.output.insert(key.into(), serde_json::to_value(value)?);
        Ok(())
    }

    fn group(&mut self) -> Result<&SymmetryGroup> {
        if self.group.is_none() {
            self.group = Some(automorphisms(self.p)?);
        }
        Ok(self.group.as_ref().expect("just set"))
    }

    fn note(&mut self, n: impl Into<String>) {
        let n = n.into();
        if !self.notes.contains(&n) {
            self.notes.push(n);
        }
    }
}

pub fn run(cmd: &Command, p: &PolytopeSpec) -> Result<RunReport> {
    let start = Instant::now();
    let mut r = Run::new(p);
    match cmd {
        Command::GenP => {
            r.put("polytope", p.to_json())?;
            r.check(Check::new("normals are unit and distinct", true, format!("{} facets", p.len())));
        }
        Command::Gram => gram(&mut r)?,
        Command::CheckRightAngled => right_angled(&mut r)?,
        Command::CubeCorrespondence => cube_correspondence(&mut r)?,
        Command::Ridges { facet } => ridges(&mut r, facet.as_deref())?,
        Command::Vertices | Command::FiniteVolume => vertices(&mut r, *cmd == Command::FiniteVolume)?,
        Command::Symmetries => symmetries(&mut r)?,
        Command::ClassPreservation => class_preservation(&mut r)?,
        Command::Ends { mode } => ends(&mut r, *mode)?,
        Command::Audit { remove, mode } => audit(&mut r, remove.as_deref(), *mode)?,
        Command::Footprints => footprints(&mut r)?,
        Command::VerifyAll => {
            gram(&mut r)?;
            right_angled(&mut r)?;
            cube_correspondence(&mut r)?;
            ridges(&mut r, None)?;
            symmetries(&mut r)?;
            class_preservation(&mut r)?;
            vertices(&mut r, true)?;
            footprints(&mut r)?;
            ends(&mut r, DisjointMode::Strict)?;
            ends(&mut r, DisjointMode::Weak)?;
            audit(&mut r, None, DisjointMode::Strict)?;
            let iso = isometry_check(p.dim(), 1000, 2024)?;
            r.check(Check::new(
                "upper half-space map preserves distance (1000 pairs)",
                iso.max_abs_error < 1e-10,
                format!("max error {:.2e}", iso.max_abs_error),
            ));
        }
    }
    let pass = r.checks.iter().all(|c| c.pass);
    Ok(RunReport {
        command: cmd.name().into(),
        input_digest: digest(p),
        pass,
        checks: r.checks,
        notes: r.notes,
        output: Value::Object(r.output),
        duration: start.elapsed(),
    })
}

fn gram(r: &mut Run) -> Result<()> {
    let p = r.p;
    let g = p.gram_matrix();
    let rows: Vec<Vec<String>> = (0..g.rows()).map(|i| g.row(i).iter().map(ToString::to_string).collect()).collect();
    let values = off_diagonal_values(p);
    r.put("labels", p.labels())?;
    r.put("gram", rows)?;
    r.put("off_diagonal_values", &values)?;
    let diagonal = (0..g.rows()).all(|i| g[(i, i)].is_one());
    r.check(Check::new("diagonal entries are 1", diagonal, format!("{} facets", p.len())));
    if r.builtin {
        let expected: std::collections::BTreeSet<ExactScalar> = (0..=5).map(|k| ExactScalar::from_int(-k)).collect();
        r.check(Check::eq(
            "off-diagonal values are exactly {0,-1,-2,-3,-4,-5}",
            values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            expected.iter().map(ToString::to_string).collect::<Vec<_>>(),
        ));
    }
    Ok(())
}

fn right_angled(r: &mut Run) -> Result<()> {
    let p = r.p;
    let check = is_right_angled(p);
    let detail = match &check.counterexample {
        None => format!("{} pairs", p.len() * (p.len() - 1) / 2),
        Some((i, j, inner)) => {
            format!("{} and {} meet at inner product {inner}", p.facets()[*i].label, p.facets()[*j].label)
        }
    };
    r.put(
        "right_angled",
        json!({
            "right_angled": check.right_angled,
            "counterexample": check.counterexample.as_ref().map(|(i, j, inner)| json!({
                "first": p.facets()[*i].label,
                "second": p.facets()[*j].label,
                "inner": inner.to_string(),
            })),
        }),
    )?;
    r.check(Check::new("intersecting facets are orthogonal", check.right_angled, detail));
    Ok(())
}

fn cube_correspondence(r: &mut Run) -> Result<()> {
    let report = verify_cube_correspondence(r.p)?;
    let n = r.p.len();
    r.check(Check::new(
        "cube diagram predicts every mutual position",
        report.passed() && report.pairs == n * (n - 1) / 2,
        format!("{} pairs, {} mismatches", report.pairs, report.mismatches.len()),
    ));
    r.put("cube_correspondence", report)
}

fn ridges(r: &mut Run, facet: Option<&str>) -> Result<()> {
    let p = r.p;
    let indices = match facet {
        Some(l) => vec![p.index_of(l)?],
        None => (0..p.len()).collect(),
    };
    let mut rows = Vec::new();
    let mut by_family: BTreeMap<Family, Vec<(String, usize)>> = BTreeMap::new();
    for i in indices {
        let f = &p.facets()[i];
        let count = ridge_count(p, i)?;
        rows.push(json!({ "facet": f.label, "ridges": count }));
        by_family.entry(f.family).or_default().push((f.label.clone(), count));
    }
    if r.builtin {
        for (family, expected) in [(Family::TypeI, 24), (Family::TypeII, 24), (Family::TypeIII, 10)] {
            let Some(list) = by_family.get(&family) else { continue };
            let wrong: Vec<&(String, usize)> = list.iter().filter(|(_, c)| *c != expected).collect();
            let detail = match wrong.first() {
                None => format!("{} facets", list.len()),
                Some((l, c)) => format!("{} of {} facets differ, e.g. {l} has {c}", wrong.len(), list.len()),
            };
            let name = match family {
                Family::TypeIII => "type III facets have 10 ridges".to_string(),
                _ => format!("type {} facets have 24 ridges", if family == Family::TypeI { "I" } else { "II" }),
            };
            r.check(Check::new(name, wrong.is_empty(), detail));
        }
    } else {
        r.check(Check::new("ridge counts computed", true, format!("{} facets", rows.len())));
    }
    r.put("ridges", rows)
}

fn vertices(r: &mut Run, certificate: bool) -> Result<()> {
    let p = r.p;
    if let Err(e) = is_right_angled(p).into_result(p) {
        r.check(Check::new("vertex enumeration", false, e.to_string()));
        return Ok(());
    }
    if let Err(e) = p.require_spanning() {
        r.check(Check::new("vertex enumeration", false, e.to_string()));
        return Ok(());
    }
    let table = p.positions();
    let vs = vertices_from_table(p, &table, SearchOptions::default());
    let ideal = vs.iter().filter(|v| v.kind == VertexKind::Ideal).count();
    let finite = vs.len() - ideal;
    let boxed = vs
        .iter()
        .filter(|v| v.kind == VertexKind::Ideal)
        .all(|v| box_link_pairs(&table, &v.incident_facets).is_some_and(|b| b.len() == p.dim() - 1));
    r.check(Check::new("every ideal vertex has a box link", boxed, format!("{ideal} ideal, {finite} finite")));
    if r.builtin {
        let g = golden();
        r.check(Check::eq("vertex counts (ideal, finite)", (ideal, finite), (g.vertices.ideal, g.vertices.finite)));
        let top = LorentzVector::from_ints(&[0, 0, 0, 0, 1, 1]);
        let type_one: Vec<usize> = (0..p.len()).filter(|&i| p.facets()[i].family == Family::TypeI).collect();
        let present = vs.iter().any(|v| v.direction == top && v.incident_facets == type_one);
        r.check(Check::new("ideal vertex (0,0,0,0,1,1) lies on the 8 type I facets", present, ""));
        let corner = ["X+", "Y+", "Z+", "W+", "S(0,1,1,1)", "S(1,0,1,1)", "S(1,1,0,1)", "S(1,1,1,0)"];
        let mut want = corner.iter().map(|l| p.index_of(l)).collect::<Result<Vec<_>>>()?;
        want.sort_unstable();
        let point = vs
            .iter()
            .find(|v| v.incident_facets == want)
            .map(|v| boundary_point_exact(&v.direction))
            .transpose()?
            .flatten();
        let ones = Some(vec![ExactScalar::one(); 4]);
        r.check(Check::new(
            "ideal vertex at boundary point (1,1,1,1) lies on its 8 facets",
            point == ones,
            format!("{:?}", point.map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())),
        ));
    }
    if certificate {
        let cert = match certificate_from_vertices(p, &table, &vs) {
            Ok(c) => c,
            Err(Error::VolumeMethodsDisagree { combinatorial, ray_oracle, diagnostics }) => {
                r.check(Check::new("finite-volume methods agree", false, diagnostics));
                r.put("certificate", json!({ "combinatorial": combinatorial, "ray_oracle": ray_oracle }))?;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        r.check(Check::new(
            "finite volume (combinatorial and ray methods)",
            cert.finite_volume,
            format!("combinatorial {}, ray {}", cert.method_combinatorial, cert.method_ray_oracle),
        ));
        if cert.finite_volume {
            let f = f_vector_from_vertices(p, &vs);
            if r.builtin {
                r.check(Check::eq("f-vector", f.clone(), golden().f_vector));
            }
            r.put("f_vector", f)?;
        }
        r.put("certificate", cert)?;
    } else {
        r.put("vertices", vertex_report(p, &vs))?;
    }
    Ok(())
}

fn symmetries(r: &mut Run) -> Result<()> {
    let p = r.p;
    let group = r.group()?.clone();
    let matrices = realize_all(&group, p);
    r.check(Check::new(
        "every symmetry is realized by a matrix with AJAᵀ = J",
        matrices.is_ok(),
        match &matrices {
            Ok(m) => format!("{} matrices", m.len()),
            Err(e) => e.to_string(),
        },
    ));
    if !r.builtin {
        r.put("order", group.order())?;
        r.put("generators", group.generators.iter().map(|g| g.cycle_notation(&p.labels())).collect::<Vec<_>>())?;
        return Ok(());
    }
    let report = group_report(&group, p)?;
    r.check(Check::eq("order of the symmetry group", group.order(), 768));
    let action = cube_action(&group, p)?;
    let mirror = reflection_permutation(p, &cube_swap_mirror())?;
    let kernel_ok =
        action.kernel.len() == 2 && action.kernel.iter().any(|g| g.is_identity()) && action.kernel.contains(&mirror);
    r.check(Check::new(
        "kernel of the cube action is {id, r5}",
        kernel_ok,
        format!("{} elements", action.kernel.len()),
    ));
    r.check(Check::eq("image of the cube action", action.image.len(), 384));
    r.check(Check::eq("symmetries of the cube diagram", cube_symmetry_count(), 384));
    if !report.coordinate_action_transitive_on_type_i {
        r.note(format!(
            "coordinate permutations are not transitive on type I facets: orbits {:?}",
            report.coordinate_orbits_type_i
        ));
    }
    r.put("symmetries", report)
}

fn class_preservation(r: &mut Run) -> Result<()> {
    let p = r.p;
    let group = r.group()?.clone();
    let report = verify_facet_class_preservation(&group, p);
    r.check(Check::new(
        "symmetries preserve I∪II and III",
        report.preserves_classes,
        format!("{} elements", report.elements_checked),
    ));
    r.check(Check::new(
        "a symmetry moving one type I facet into type II moves all of them",
        report.swaps_wholesale,
        format!("{} such elements", report.swapping_elements),
    ));
    r.put("class_preservation", report)
}

fn flag_removal_set(r: &mut Run, mode: DisjointMode) -> Result<()> {
    let p = r.p;
    let labels = ["W+", "W-", "S_W+", "S_W-"];
    let Ok(idx) = labels.iter().map(|l| p.index_of(l)).collect::<Result<Vec<_>>>() else {
        return Ok(());
    };
    let table = p.positions();
    if let Some((i, j)) = first_conflict(&table, &idx, mode) {
        let relation = if table.orthogonal(i, j) { "orthogonal" } else { "parallel" };
        r.note(format!(
            "{{W±, S_W±}} is not pairwise disjoint in {mode} mode: {} and {} are {relation}",
            p.facets()[i].label,
            p.facets()[j].label
        ));
    }
    Ok(())
}

fn ends(r: &mut Run, mode: DisjointMode) -> Result<()> {
    let p = r.p;
    let group = r.group()?.clone();
    let sets = maximal_disjoint_sets(p, mode, &group);
    let table = p.positions();
    let valid = sets.iter().all(|s| is_maximal(&table, s.selection.removed(), mode));
    r.check(Check::new(format!("{mode} maximal sets are disjoint and maximal"), valid, format!("{} sets", sets.len())));
    let c = census(p, &sets, mode);
    if r.builtin {
        let g = golden();
        let want = &g.census[&mode];
        r.check(Check::eq(
            format!("{mode} census (sets, orbits)"),
            (c.maximal_set_count, c.orbit_count),
            (want.maximal_sets, want.orbits),
        ));
        flag_removal_set(r, mode)?;
    }
    r.put(&format!("census_{mode}"), c)
}

fn audit(r: &mut Run, remove: Option<&[String]>, mode: DisjointMode) -> Result<()> {
    let p = r.p;
    let mut cache = AuditCache::new();
    match remove {
        Some(labels) => {
            let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
            let f = FacetSelection::from_labels(p, &labels, mode)?;
            let report = cache.audit(p, &f);
            r.check(Check::new(
                "every remaining facet is locally determined",
                report.all_determined,
                format!("{} records, tangency used {} times", report.records.len(), report.tangency_used),
            ));
            if report.tangency_used > 0 {
                r.note("tangency conditions were needed for some facets");
            }
            r.put("audit", report)?;
        }
        None => {
            let group = r.group()?.clone();
            let sets: Vec<FacetSelection> =
                maximal_disjoint_sets(p, mode, &group).into_iter().map(|m| m.selection).collect();
            let reports = cache.audit_many(p, &sets);
            let failing: Vec<&Vec<String>> = reports.iter().filter(|x| !x.all_determined).map(|x| &x.removed).collect();
            let tangency = reports.iter().filter(|x| x.tangency_used > 0).count();
            r.check(Check::new(
                format!("every facet outside each {mode} maximal set is locally determined"),
                failing.is_empty(),
                match failing.first() {
                    None => format!("{} sets, {tangency} needing tangency", reports.len()),
                    Some(f) => format!("{} sets fail, e.g. removing {f:?}", failing.len()),
                },
            ));
            if tangency > 0 {
                r.note(format!("{tangency} of {} {mode} audits needed tangency conditions", reports.len()));
            }
            r.put(
                &format!("audit_{mode}"),
                json!({ "sets": reports.len(), "failing": failing, "tangency": tangency }),
            )?;
        }
    }
    if r.builtin {
        flag_removal_set(r, mode)?;
    }
    Ok(())
}

fn footprints(r: &mut Run) -> Result<()> {
    let p = r.p;
    let catalog: Vec<Value> = footprint_catalog(p)?
        .into_iter()
        .map(|(label, wall)| {
            let mut v = serde_json::to_value(wall).expect("wall serializes");
            v["facet"] = Value::String(label);
            v
        })
        .collect();
    r.put("footprints", catalog)?;
    if !r.builtin {
        r.check(Check::new("footprints computed", true, format!("{} facets", p.len())));
        return Ok(());
    }
    let report = verify_standard_configuration(p)?;
    let mismatched: Vec<&str> =
        report.checks.iter().filter(|c| !(c.exact_match && c.float_match)).map(|c| c.facet.as_str()).collect();
    r.check(Check::new(
        "footprints match the plane / unit-sphere catalog",
        report.all_match,
        format!("{} planes, {} spheres, mismatched {:?}", report.planes, report.spheres, mismatched),
    ));
    r.check(Check::new(
        "tangency and orthogonality of footprints",
        report.max_tangency_residual < 1e-9 && report.max_orthogonality_residual < 1e-9,
        format!(
            "tangency {:.1e}, orthogonality {:.1e}",
            report.max_tangency_residual, report.max_orthogonality_residual
        ),
    ));
    r.check(Check::new(
        "sampled footprint points lie on their hyperplanes",
        report.max_sample_residual < 1e-12,
        format!("{:.1e}", report.max_sample_residual),
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_parses() {
        let g = golden();
        assert_eq!(g.f_vector.len(), 5);
        assert_eq!(g.census.len(), 2);
    }

    #[test]
    fn digest_is_stable() {
        let p = build_polytope_p();
        assert_eq!(digest(&p), digest(&build_polytope_p()));
        assert_eq!(digest(&p).len(), 64);
    }

    #[test]
    fn reports_are_deterministic() {
        let p = build_polytope_p();
        let a = run(&Command::CubeCorrespondence, &p).unwrap();
        let b = run(&Command::CubeCorrespondence, &p).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.pass);
    }

    #[test]
    fn ridge_command_reports_counts() {
        let p = build_polytope_p();
        let r = run(&Command::Ridges { facet: Some("S(1,1,1,0)".into()) }, &p).unwrap();
        assert_eq!(r.output["ridges"][0]["ridges"], 12);
        assert!(!r.pass);
    }
}
