//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use racg::cube::verify_cube_correspondence;
use racg::ends::{maximal_disjoint_sets, AuditCache, DisjointMode, FacetSelection};
use racg::faces::{box_link_pairs, enumerate_vertices, f_vector, finite_volume_certificate, ridge_count, VertexKind};
use racg::fixtures::{ideal_triangle, right_angled_pentagon, ultraparallel_strip};
use racg::lorentz::{reflect, ExactScalar, LorentzVector, Matrix};
use racg::models::{isometry_check, verify_standard_configuration, wall_footprint_exact, ExactWall};
use racg::polytope::{build_polytope_p, is_right_angled, off_diagonal_values, Family, PolytopeSpec};
use racg::symmetry::{
    automorphisms, cube_action, cube_swap_mirror, realize_all, reflection_permutation, verify_facet_class_preservation,
};
use racg::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, Duration, fn(&PolytopeSpec) -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn timed(limit: Duration, f: impl FnOnce() -> Result<Outcome>) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
    let t = start.elapsed();
    if t > limit {
        return (Outcome { pass: false, detail: format!("{} (over {limit:?})", o.detail) }, t);
    }
    (o, t)
}

fn gram_spectrum(p: &PolytopeSpec) -> Result<Outcome> {
    let values = off_diagonal_values(p);
    let expected: BTreeSet<ExactScalar> = (0..=5).map(|k| ExactScalar::from_int(-k)).collect();
    let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
    outcome(values == expected, format!("values {shown:?} over {} pairs", p.len() * (p.len() - 1) / 2))
}

fn right_angles(p: &PolytopeSpec) -> Result<Outcome> {
    let check = is_right_angled(p);
    outcome(check.right_angled, format!("counterexample {:?}", check.counterexample))
}

fn cube_diagram(p: &PolytopeSpec) -> Result<Outcome> {
    let r = verify_cube_correspondence(p)?;
    outcome(r.passed() && r.pairs == 1128, format!("{} pairs, {} mismatches", r.pairs, r.mismatches.len()))
}

fn ridges(p: &PolytopeSpec) -> Result<Outcome> {
    let mut wrong = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, f) in p.facets().iter().enumerate() {
        let expected = if f.family == Family::TypeIII { 10 } else { 24 };
        let got = ridge_count(p, i)?;
        seen.insert((f.family, got));
        if got != expected {
            wrong.push(f.label.clone());
        }
    }
    outcome(
        wrong.is_empty(),
        format!("{} of 48 facets off the claimed 24/10; observed (family, count) {seen:?}", wrong.len()),
    )
}

fn symmetry(p: &PolytopeSpec) -> Result<Outcome> {
    let group = automorphisms(p)?;
    let action = cube_action(&group, p)?;
    let mirror = reflection_permutation(p, &cube_swap_mirror())?;
    let kernel_ok = action.kernel.len() == 2 && action.kernel.contains(&mirror);
    let classes = verify_facet_class_preservation(&group, p);
    let j = Matrix::lorentz_form(6);
    let mats = realize_all(&group, p)?;
    let mut form_ok = mats.len() == 768;
    for a in &mats {
        form_ok &= a.mul(&j)?.mul(&a.transpose())? == j;
    }
    outcome(
        group.order() == 768 && kernel_ok && action.image.len() == 384 && classes.passed() && form_ok,
        format!(
            "order {}, kernel {}, image {}, classes preserved {}, {} matrices with AJAᵀ = J {}",
            group.order(),
            action.kernel.len(),
            action.image.len(),
            classes.passed(),
            mats.len(),
            form_ok
        ),
    )
}

fn finite_volume(p: &PolytopeSpec) -> Result<Outcome> {
    let cert = finite_volume_certificate(p)?;
    let vs = enumerate_vertices(p)?;
    let table = p.positions();
    let ideal: Vec<_> = vs.iter().filter(|v| v.kind == VertexKind::Ideal).collect();
    let boxed = ideal.iter().all(|v| {
        v.incident_facets.len() == 8 && box_link_pairs(&table, &v.incident_facets).is_some_and(|b| b.len() == 4)
    });
    let type_one: Vec<usize> = (0..p.len()).filter(|&i| p.facets()[i].family == Family::TypeI).collect();
    let top = LorentzVector::from_ints(&[0, 0, 0, 0, 1, 1]);
    let has_top = ideal.iter().any(|v| v.direction == top && v.incident_facets == type_one);
    outcome(
        cert.finite_volume && cert.method_combinatorial && cert.method_ray_oracle && boxed && has_top,
        format!(
            "combinatorial {}, ray {}, {} ideal / {} finite, box links {boxed}, (0,0,0,0,1,1) present {has_top}",
            cert.method_combinatorial, cert.method_ray_oracle, cert.ideal_vertex_count, cert.finite_vertex_count
        ),
    )
}

fn plane_point(w: &ExactWall) -> Option<Vec<ExactScalar>> {
    match w {
        ExactWall::AffineHyperplane { normal, offset } => {
            Some(normal.iter().map(|n| n.clone() * offset.clone()).collect())
        }
        ExactWall::Sphere { .. } => None,
    }
}

fn standard_configuration(p: &PolytopeSpec) -> Result<Outcome> {
    let r = verify_standard_configuration(p)?;
    let ints = |v: &[i64]| v.iter().map(|&x| ExactScalar::from_int(x)).collect::<Vec<_>>();
    let wall = |l: &str| wall_footprint_exact(&p.facets()[p.index_of(l).expect("label")]);
    // x = -1: unit normal along the x axis, foot of the perpendicular at (-1,0,0,0)
    let x_minus = wall("X-")?;
    let plane_ok = matches!(&x_minus, ExactWall::AffineHyperplane { normal, .. }
        if normal.iter().filter(|c| !c.is_zero()).count() == 1 && !normal[0].is_zero())
        && plane_point(&x_minus) == Some(ints(&[-1, 0, 0, 0]));
    let sphere_ok = |l: &str, c: &[i64]| -> Result<bool> {
        Ok(matches!(wall(l)?, ExactWall::Sphere { center, radius, .. } if center == ints(c) && radius.is_one()))
    };
    let anchors = plane_ok && sphere_ok("S_X-", &[-1, 0, 0, 0])? && sphere_ok("S(1,1,1,0)", &[1, 1, 1, 0])?;
    outcome(
        r.all_match && anchors && r.max_tangency_residual < 1e-9 && r.max_orthogonality_residual < 1e-9,
        format!(
            "{} planes + {} spheres match {}, anchors {anchors}, tangency {:.1e}, orthogonality {:.1e}",
            r.planes, r.spheres, r.all_match, r.max_tangency_residual, r.max_orthogonality_residual
        ),
    )
}

fn ends_audit(p: &PolytopeSpec) -> Result<Outcome> {
    let group = automorphisms(p)?;
    let sets: Vec<FacetSelection> =
        maximal_disjoint_sets(p, DisjointMode::Strict, &group).into_iter().map(|m| m.selection).collect();
    let reports = AuditCache::new().audit_many(p, &sets);
    let bad = reports.iter().filter(|r| !r.all_determined).count();
    let records: usize = reports.iter().map(|r| r.records.len()).sum();
    outcome(
        bad == 0 && !sets.is_empty(),
        format!("{} maximal sets, {records} facet audits, {bad} sets undetermined", sets.len()),
    )
}

fn random_scalar(rng: &mut ChaCha8Rng) -> ExactScalar {
    ExactScalar::from_parts(
        (rng.random_range(-9..=9), rng.random_range(1..=5)),
        (rng.random_range(-3..=3), rng.random_range(1..=4)),
    )
}

fn permuted(p: &PolytopeSpec, order: &[usize]) -> Result<PolytopeSpec> {
    PolytopeSpec::new(p.dim(), order.iter().map(|&i| p.facets()[i].clone()).collect())
}

fn vertex_sets(p: &PolytopeSpec, back: &[usize]) -> Result<BTreeSet<(Vec<usize>, LorentzVector)>> {
    Ok(enumerate_vertices(p)?
        .into_iter()
        .map(|v| {
            let mut inc: Vec<usize> = v.incident_facets.iter().map(|&i| back[i]).collect();
            inc.sort_unstable();
            (inc, v.direction)
        })
        .collect())
}

fn property_suites(p: &PolytopeSpec) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();

    for _ in 0..200 {
        let u = p.facets()[rng.random_range(0..p.len())].vector().clone();
        let x = LorentzVector::new((0..6).map(|_| random_scalar(&mut rng)).collect());
        let y = LorentzVector::new((0..6).map(|_| random_scalar(&mut rng)).collect());
        if reflect(&u, &x)?.inner(&reflect(&u, &y)?)? != x.inner(&y)? {
            failures.push("reflection");
            break;
        }
    }

    let group = automorphisms(p)?;
    let mats = realize_all(&group, p)?;
    for _ in 0..200 {
        let a = &mats[rng.random_range(0..mats.len())];
        let x = LorentzVector::new((0..6).map(|_| random_scalar(&mut rng)).collect());
        let y = LorentzVector::new((0..6).map(|_| random_scalar(&mut rng)).collect());
        if a.mul_vec(&x)?.inner(&a.mul_vec(&y)?)? != x.inner(&y)? {
            failures.push("realized symmetry");
            break;
        }
    }

    let iso = isometry_check(5, 1000, 31)?;
    if iso.max_abs_error > 1e-10 {
        failures.push("isometry");
    }

    for q in [p.clone(), ideal_triangle(), right_angled_pentagon()] {
        let identity: Vec<usize> = (0..q.len()).collect();
        let base = vertex_sets(&q, &identity)?;
        let mut order = identity.clone();
        order.shuffle(&mut rng);
        if vertex_sets(&permuted(&q, &order)?, &order)? != base {
            failures.push("permutation invariance");
        }
    }

    let tri = finite_volume_certificate(&ideal_triangle())?;
    if !(tri.finite_volume && tri.ideal_vertex_count == 3 && tri.finite_vertex_count == 0) {
        failures.push("ideal triangle");
    }
    if finite_volume_certificate(&ultraparallel_strip())?.finite_volume {
        failures.push("strip");
    }
    let pent = finite_volume_certificate(&right_angled_pentagon())?;
    if !(pent.finite_volume && pent.finite_vertex_count == 5 && f_vector(&right_angled_pentagon())? == [5, 5]) {
        failures.push("pentagon");
    }
    outcome(failures.is_empty(), format!("isometry error {:.1e}, failures {failures:?}", iso.max_abs_error))
}

fn main() -> ExitCode {
    let p = build_polytope_p();
    let secs = Duration::from_secs;
    let criteria: [Criterion; 9] = [
        ("Gram entries are exactly {0,-1,-2,-3,-4,-5}", secs(1), gram_spectrum),
        ("intersecting facets are orthogonal", secs(1), right_angles),
        ("cube diagram predicts all 1128 positions", secs(1), cube_diagram),
        ("ridge counts 24 (types I, II) and 10 (type III)", secs(1), ridges),
        ("symmetry group of order 768 with kernel 2 and image 384", secs(30), symmetry),
        ("finite volume with box links at ideal vertices", secs(60), finite_volume),
        ("footprints form the standard configuration", secs(5), standard_configuration),
        ("strict maximal sets leave every facet determined", secs(120), ends_audit),
        ("property suites and fixture oracles", secs(120), property_suites),
    ];
    let mut failed = 0;
    for (n, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (o, t) = timed(limit, || f(&p));
        if !o.pass {
            failed += 1;
        }
        println!("criterion {}: {}  {name}  [{}; {:.2?}]", n + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail, t);
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
