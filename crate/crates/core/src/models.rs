//! Hyperboloid, ball and upper half-space models, and the traces of facet
//! hyperplanes on the boundary of the upper half-space.
//!
//! `ζ(x) = (x₁, …, x_d) / (1 + x_{d+1})` sends the hyperboloid to the unit
//! ball and `η(y) = (2y₁, …, 2y_{d-1}, 1 - |y|²) / |y - e_d|²` sends the ball
//! to the upper half-space. On the boundary, the ideal ray `y` goes to
//! `yᵢ / (y_{d+1} - y_d)` and the ray `(0, …, 0, 1, 1)` goes to infinity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{ExactScalar, LorentzVector, VectorKind};
use crate::polytope::{FacetNormal, Family, PolytopeSpec, PositionKind};

/// Algebraic identities on exactly derived data.
pub const EXACT_TOL: f64 = 1e-12;
/// Sampled and metric checks.
pub const SAMPLE_TOL: f64 = 1e-9;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Point of the ball model for a point of the hyperboloid (`ζ`) or for an
/// ideal ray (which lands on the unit sphere).
pub fn hyperboloid_to_ball(x: &LorentzVector) -> Result<Vec<f64>> {
    if x.is_zero() || !x.last().is_positive() {
        return Err(Error::SpaceLikePoint);
    }
    let c = x.to_f64();
    let d = c.len() - 1;
    match x.classify() {
        VectorKind::SpaceLike => Err(Error::SpaceLikePoint),
        VectorKind::LightLike => Ok(c[..d].iter().map(|v| v / c[d]).collect()),
        VectorKind::TimeLike => {
            // rescale onto the sheet ⟨x, x⟩ = -1 first
            let s = (-x.norm().to_f64()).sqrt();
            let t = c[d] / s;
            Ok(c[..d].iter().map(|v| v / s / (1.0 + t)).collect())
        }
    }
}

/// `ζ` on a float point of the upper sheet.
pub fn hyperboloid_to_ball_f64(x: &[f64]) -> Result<Vec<f64>> {
    let d = x.len() - 1;
    let norm = dot(&x[..d], &x[..d]) - x[d] * x[d];
    if norm > SAMPLE_TOL * x[d].abs().max(1.0).powi(2) || x[d] <= 0.0 {
        return Err(Error::SpaceLikePoint);
    }
    if norm.abs() <= SAMPLE_TOL * x[d] * x[d] {
        return Ok(x[..d].iter().map(|v| v / x[d]).collect());
    }
    Ok(x[..d].iter().map(|v| v / (1.0 + x[d])).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UpperPoint {
    Finite(Vec<f64>),
    Infinity,
}

/// `η`, with `e_d` sent to the point at infinity.
pub fn ball_to_upper(y: &[f64]) -> Result<UpperPoint> {
    let d = y.len();
    let r2 = dot(y, y);
    if r2.sqrt() > 1.0 + EXACT_TOL {
        return Err(Error::OutsideBall(r2.sqrt()));
    }
    let denom: f64 = y[..d - 1].iter().map(|v| v * v).sum::<f64>() + (y[d - 1] - 1.0).powi(2);
    if denom <= EXACT_TOL * EXACT_TOL {
        return Ok(UpperPoint::Infinity);
    }
    let mut out: Vec<f64> = y[..d - 1].iter().map(|v| 2.0 * v / denom).collect();
    out.push(((1.0 - r2) / denom).max(0.0));
    Ok(UpperPoint::Finite(out))
}

/// `Φ = η ∘ ζ`.
pub fn hyperboloid_to_upper(x: &[f64]) -> Result<UpperPoint> {
    ball_to_upper(&hyperboloid_to_ball_f64(x)?)
}

/// Distance on the hyperboloid, `2 asinh(√⟨x - y, x - y⟩ / 2)`.
pub fn hyperboloid_distance(x: &[f64], y: &[f64]) -> f64 {
    let d = x.len() - 1;
    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let q = dot(&diff[..d], &diff[..d]) - diff[d] * diff[d];
    2.0 * (q.max(0.0).sqrt() / 2.0).asinh()
}

/// Distance in the upper half-space, `2 asinh(|p - q| / (2√(p_d q_d)))`.
pub fn upper_distance(p: &[f64], q: &[f64]) -> f64 {
    let d = p.len() - 1;
    2.0 * (dist(p, q) / (2.0 * (p[d] * q[d]).sqrt())).asinh()
}

/// Exact boundary point of an ideal ray, `None` for the point at infinity.
pub fn boundary_point_exact(y: &LorentzVector) -> Result<Option<Vec<ExactScalar>>> {
    if y.classify() != VectorKind::LightLike || y.is_zero() {
        return Err(Error::InvalidSelection(format!("{y} is not an ideal ray")));
    }
    let d = y.dim();
    let c = y.coords();
    let denom = &c[d] - &c[d - 1];
    let Some(inv) = denom.recip() else {
        return Ok(None);
    };
    Ok(Some(c[..d - 1].iter().map(|x| x * &inv).collect()))
}

/// The ideal ray `(2p, |p|² - 1, |p|² + 1)` over a boundary point.
pub fn ray_over(p: &[f64]) -> Vec<f64> {
    let s = dot(p, p);
    let mut out: Vec<f64> = p.iter().map(|x| 2.0 * x).collect();
    out.push(s - 1.0);
    out.push(s + 1.0);
    out
}

/// Trace of a facet hyperplane on the boundary `R^{d-1}` of the upper half-space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactWall {
    /// `normal · p = offset` with a unit normal; the polytope side is `≤`.
    AffineHyperplane { normal: Vec<ExactScalar>, offset: ExactScalar },
    /// `|p - center| = radius`; the polytope lies outside when `outside` holds.
    Sphere { center: Vec<ExactScalar>, radius: ExactScalar, outside: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum UpperHalfSpaceWall {
    #[serde(rename = "plane")]
    AffineHyperplane {
        normal: Vec<f64>,
        offset: f64,
    },
    Sphere {
        center: Vec<f64>,
        radius: f64,
    },
}

impl ExactWall {
    pub fn to_f64(&self) -> UpperHalfSpaceWall {
        let f = |v: &[ExactScalar]| v.iter().map(ExactScalar::to_f64).collect();
        match self {
            ExactWall::AffineHyperplane { normal, offset } => {
                UpperHalfSpaceWall::AffineHyperplane { normal: f(normal), offset: offset.to_f64() }
            }
            ExactWall::Sphere { center, radius, .. } => {
                UpperHalfSpaceWall::Sphere { center: f(center), radius: radius.to_f64() }
            }
        }
    }
}

/// Exact footprint of a facet: a plane when the hyperplane passes through the
/// ideal point `(0, …, 0, 1, 1)`, a sphere otherwise.
pub fn wall_footprint_exact(v: &FacetNormal) -> Result<ExactWall> {
    let u = v.vector();
    if !u.norm().is_one() {
        return Err(Error::NonUnitNormal(u.norm().to_string()));
    }
    let d = u.dim();
    let c = u.coords();
    let head = &c[..d - 1];
    let gap = &c[d - 1] - &c[d];
    match gap.recip() {
        None => Ok(ExactWall::AffineHyperplane { normal: head.to_vec(), offset: c[d - 1].clone() }),
        Some(inv) => Ok(ExactWall::Sphere {
            center: head.iter().map(|x| -(x * &inv)).collect(),
            radius: inv.abs(),
            outside: gap.is_negative(),
        }),
    }
}

pub fn wall_footprint(v: &FacetNormal) -> Result<UpperHalfSpaceWall> {
    Ok(wall_footprint_exact(v)?.to_f64())
}

/// Signed defect of a boundary point against a wall; zero on the wall.
pub fn wall_residual(w: &UpperHalfSpaceWall, p: &[f64]) -> f64 {
    match w {
        UpperHalfSpaceWall::AffineHyperplane { normal, offset } => dot(normal, p) - offset,
        UpperHalfSpaceWall::Sphere { center, radius } => dist(p, center) - radius,
    }
}

fn tangency_residual(a: &UpperHalfSpaceWall, b: &UpperHalfSpaceWall) -> f64 {
    use UpperHalfSpaceWall::*;
    match (a, b) {
        (AffineHyperplane { normal: n1, .. }, AffineHyperplane { normal: n2, .. }) => 1.0 - dot(n1, n2).abs(),
        (Sphere { center: c1, radius: r1 }, Sphere { center: c2, radius: r2 }) => {
            let d = dist(c1, c2);
            (d - r1 - r2).abs().min((d - (r1 - r2).abs()).abs())
        }
        (Sphere { center, radius }, AffineHyperplane { normal, offset })
        | (AffineHyperplane { normal, offset }, Sphere { center, radius }) => {
            ((dot(normal, center) - offset).abs() - radius).abs()
        }
    }
}

fn orthogonality_residual(a: &UpperHalfSpaceWall, b: &UpperHalfSpaceWall) -> f64 {
    use UpperHalfSpaceWall::*;
    match (a, b) {
        (AffineHyperplane { normal: n1, .. }, AffineHyperplane { normal: n2, .. }) => dot(n1, n2).abs(),
        (Sphere { center: c1, radius: r1 }, Sphere { center: c2, radius: r2 }) => {
            (dist(c1, c2).powi(2) - r1 * r1 - r2 * r2).abs()
        }
        (Sphere { center, .. }, AffineHyperplane { normal, offset })
        | (AffineHyperplane { normal, offset }, Sphere { center, .. }) => (dot(normal, center) - offset).abs(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FootprintCheck {
    pub facet: String,
    pub expected: UpperHalfSpaceWall,
    pub actual: UpperHalfSpaceWall,
    pub exact_match: bool,
    pub float_match: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardConfigurationReport {
    pub planes: usize,
    pub spheres: usize,
    pub checks: Vec<FootprintCheck>,
    pub all_match: bool,
    pub max_sample_residual: f64,
    pub max_tangency_residual: f64,
    pub max_orthogonality_residual: f64,
    pub pass: bool,
}

/// The expected footprint of a built-in facet, read off from its family and
/// boundary coordinates `a`: type I gives the plane `a · p = 1`, types II and
/// III give the unit sphere centred at `a`.
pub fn catalog_wall(f: &FacetNormal) -> Result<ExactWall> {
    let a = f.a_projection();
    match f.family {
        Family::TypeI => Ok(ExactWall::AffineHyperplane { normal: a, offset: ExactScalar::one() }),
        Family::TypeII | Family::TypeIII => {
            Ok(ExactWall::Sphere { center: a, radius: ExactScalar::one(), outside: true })
        }
        Family::Other => Err(Error::MissingFamily(f.label.clone())),
    }
}

fn walls_close(a: &UpperHalfSpaceWall, b: &UpperHalfSpaceWall) -> bool {
    use UpperHalfSpaceWall::*;
    let close = |x: &[f64], y: &[f64]| x.len() == y.len() && dist(x, y) < EXACT_TOL;
    match (a, b) {
        (AffineHyperplane { normal: n1, offset: o1 }, AffineHyperplane { normal: n2, offset: o2 }) => {
            close(n1, n2) && (o1 - o2).abs() < EXACT_TOL
        }
        (Sphere { center: c1, radius: r1 }, Sphere { center: c2, radius: r2 }) => {
            close(c1, c2) && (r1 - r2).abs() < EXACT_TOL
        }
        _ => false,
    }
}

/// Points on the trace of a wall, for residual checks through the inverse boundary map.
fn sample_on(w: &UpperHalfSpaceWall, rng: &mut ChaCha8Rng, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let k = match w {
                UpperHalfSpaceWall::Sphere { center, .. } => center.len(),
                UpperHalfSpaceWall::AffineHyperplane { normal, .. } => normal.len(),
            };
            let dir: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
            match w {
                UpperHalfSpaceWall::Sphere { center, radius } => {
                    let n = dot(&dir, &dir).sqrt();
                    center.iter().zip(&dir).map(|(c, x)| c + radius * x / n).collect()
                }
                UpperHalfSpaceWall::AffineHyperplane { normal, offset } => {
                    // project a random point onto the plane
                    let t = dot(normal, &dir) - offset;
                    dir.iter().zip(normal).map(|(x, n)| x - t * n).collect()
                }
            }
        })
        .collect()
}

pub fn verify_standard_configuration(p: &PolytopeSpec) -> Result<StandardConfigurationReport> {
    let mut checks = Vec::with_capacity(p.len());
    let mut walls = Vec::with_capacity(p.len());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut max_sample: f64 = 0.0;
    for f in p.facets() {
        let exact = wall_footprint_exact(f)?;
        let expected = catalog_wall(f)?;
        let actual = exact.to_f64();
        let expected_f = expected.to_f64();
        let v = f.vector().to_f64();
        for pt in sample_on(&actual, &mut rng, 8) {
            let ray = ray_over(&pt);
            let scale = ray.iter().map(|x| x.abs()).fold(1.0, f64::max);
            let k = v.len() - 1;
            let inner = dot(&ray[..k], &v[..k]) - ray[k] * v[k];
            max_sample = max_sample.max(inner.abs() / scale);
        }
        checks.push(FootprintCheck {
            facet: f.label.clone(),
            float_match: walls_close(&actual, &expected_f),
            exact_match: exact == expected,
            expected: expected_f,
            actual: actual.clone(),
        });
        walls.push(actual);
    }
    let table = p.positions();
    let (mut tangency, mut orthogonality) = (0.0f64, 0.0f64);
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            match table.kind(i, j) {
                PositionKind::Parallel => tangency = tangency.max(tangency_residual(&walls[i], &walls[j])),
                PositionKind::Intersecting if table.orthogonal(i, j) => {
                    orthogonality = orthogonality.max(orthogonality_residual(&walls[i], &walls[j]))
                }
                _ => {}
            }
        }
    }
    let planes = walls.iter().filter(|w| matches!(w, UpperHalfSpaceWall::AffineHyperplane { .. })).count();
    let all_match = checks.iter().all(|c| c.exact_match && c.float_match);
    Ok(StandardConfigurationReport {
        planes,
        spheres: walls.len() - planes,
        all_match,
        pass: all_match && max_sample < EXACT_TOL && tangency < SAMPLE_TOL && orthogonality < SAMPLE_TOL,
        checks,
        max_sample_residual: max_sample,
        max_tangency_residual: tangency,
        max_orthogonality_residual: orthogonality,
    })
}

/// Footprint catalog keyed by facet label, in facet order.
pub fn footprint_catalog(p: &PolytopeSpec) -> Result<Vec<(String, UpperHalfSpaceWall)>> {
    p.facets().iter().map(|f| Ok((f.label.clone(), wall_footprint(f)?))).collect()
}

/// A random point on the upper sheet of the hyperboloid.
pub fn sample_hyperboloid(rng: &mut impl Rng, d: usize, spread: f64) -> Vec<f64> {
    let mut x: Vec<f64> = (0..d).map(|_| rng.random_range(-spread..spread)).collect();
    let t = (1.0 + dot(&x, &x)).sqrt();
    x.push(t);
    x
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryCheck {
    pub pairs: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
}

/// Compares distances before and after `Φ` on seeded random pairs.
pub fn isometry_check(d: usize, pairs: usize, seed: u64) -> Result<IsometryCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut abs, mut rel) = (0.0f64, 0.0f64);
    for _ in 0..pairs {
        let x = sample_hyperboloid(&mut rng, d, 2.0);
        let y = sample_hyperboloid(&mut rng, d, 2.0);
        let (UpperPoint::Finite(p), UpperPoint::Finite(q)) = (hyperboloid_to_upper(&x)?, hyperboloid_to_upper(&y)?)
        else {
            return Err(Error::OutsideBall(1.0));
        };
        let a = hyperboloid_distance(&x, &y);
        let b = upper_distance(&p, &q);
        abs = abs.max((a - b).abs());
        rel = rel.max((a - b).abs() / a.max(1.0));
    }
    Ok(IsometryCheck { pairs, max_abs_error: abs, max_rel_error: rel })
}
