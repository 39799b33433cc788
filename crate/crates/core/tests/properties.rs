use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::subsequence;
use racg::faces::enumerate_vertices;
use racg::fixtures::{ideal_triangle, right_angled_pentagon};
use racg::lorentz::{reflect, ExactScalar, LorentzVector, Matrix};
use racg::models::{hyperboloid_distance, hyperboloid_to_upper, upper_distance, UpperPoint};
use racg::polytope::{build_polytope_p, PolytopeSpec};
use racg::symmetry::{automorphisms, realize_all, FacetPermutation};

fn polytope() -> &'static PolytopeSpec {
    static P: OnceLock<PolytopeSpec> = OnceLock::new();
    P.get_or_init(build_polytope_p)
}

fn matrices() -> &'static Vec<Matrix> {
    static M: OnceLock<Vec<Matrix>> = OnceLock::new();
    M.get_or_init(|| {
        let p = polytope();
        realize_all(&automorphisms(p).unwrap(), p).unwrap()
    })
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-40i64..=40, 1i64..=12, -20i64..=20, 1i64..=12).prop_map(|(a, b, c, d)| ExactScalar::from_parts((a, b), (c, d)))
}

fn vector(dim: usize) -> impl Strategy<Value = LorentzVector> {
    prop::collection::vec(scalar(), dim).prop_map(LorentzVector::new)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn vertex_sets(p: &PolytopeSpec, back: &[usize]) -> BTreeSet<(Vec<usize>, LorentzVector)> {
    enumerate_vertices(p)
        .unwrap()
        .into_iter()
        .map(|v| {
            let mut inc: Vec<usize> = v.incident_facets.iter().map(|&i| back[i]).collect();
            inc.sort_unstable();
            (inc, v.direction)
        })
        .collect()
}

fn permuted(p: &PolytopeSpec, order: &[usize]) -> PolytopeSpec {
    PolytopeSpec::new(p.dim(), order.iter().map(|&i| p.facets()[i].clone()).collect()).unwrap()
}

// point on the hyperboloid over a random spatial part
fn hyperboloid_point(xs: &[f64]) -> Vec<f64> {
    let t = (1.0 + xs.iter().map(|x| x * x).sum::<f64>()).sqrt();
    xs.iter().copied().chain(std::iter::once(t)).collect()
}

proptest! {
    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn order_agrees_with_floats(a in scalar(), b in scalar()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a < b, x < y);
        }
        prop_assert_eq!(a.signum() as f64, if a.is_zero() { 0.0 } else { x.signum() });
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<ExactScalar>().unwrap(), a);
    }

    #[test]
    fn reflections_preserve_the_form(i in 0usize..48, x in vector(6), y in vector(6)) {
        let u = polytope().facets()[i].vector().clone();
        let (rx, ry) = (reflect(&u, &x).unwrap(), reflect(&u, &y).unwrap());
        prop_assert_eq!(rx.inner(&ry).unwrap(), x.inner(&y).unwrap());
        prop_assert_eq!(reflect(&u, &rx).unwrap(), x);
    }

    #[test]
    fn realized_symmetries_preserve_the_form(k in 0usize..768, x in vector(6), y in vector(6)) {
        let a = &matrices()[k];
        prop_assert_eq!(a.mul_vec(&x).unwrap().inner(&a.mul_vec(&y).unwrap()).unwrap(), x.inner(&y).unwrap());
    }

    #[test]
    fn permutation_group_laws(a in permutation(12), b in permutation(12)) {
        let (a, b) = (FacetPermutation::new(a).unwrap(), FacetPermutation::new(b).unwrap());
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).inverse(), b.inverse().compose(&a.inverse()));
        for i in 0..12 {
            prop_assert_eq!(a.compose(&b).apply(i), a.apply(b.apply(i)));
        }
    }

    #[test]
    fn fixture_vertices_ignore_facet_order(tri in permutation(3), pent in permutation(5)) {
        for (p, order) in [(ideal_triangle(), tri), (right_angled_pentagon(), pent)] {
            let id: Vec<usize> = (0..p.len()).collect();
            prop_assert_eq!(vertex_sets(&permuted(&p, &order), &order), vertex_sets(&p, &id));
        }
    }

    #[test]
    fn upper_half_space_map_is_isometric(
        a in prop::collection::vec(-3.0f64..3.0, 5),
        b in prop::collection::vec(-3.0f64..3.0, 5),
    ) {
        let (x, y) = (hyperboloid_point(&a), hyperboloid_point(&b));
        let (UpperPoint::Finite(p), UpperPoint::Finite(q)) = (hyperboloid_to_upper(&x).unwrap(), hyperboloid_to_upper(&y).unwrap()) else {
            return Err(TestCaseError::fail("finite point mapped to infinity"));
        };
        prop_assert!(p[4] > 0.0 && q[4] > 0.0);
        let (d1, d2) = (hyperboloid_distance(&x, &y), upper_distance(&p, &q));
        prop_assert!((d1 - d2).abs() < 1e-10 * d1.max(1.0), "{} vs {}", d1, d2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn polytope_vertices_ignore_facet_order(order in permutation(48)) {
        let p = polytope();
        let id: Vec<usize> = (0..48).collect();
        static BASE: OnceLock<BTreeSet<(Vec<usize>, LorentzVector)>> = OnceLock::new();
        let base = BASE.get_or_init(|| vertex_sets(p, &id));
        prop_assert_eq!(&vertex_sets(&permuted(p, &order), &order), base);
    }

    #[test]
    fn restricting_to_a_subset_keeps_the_gram_entries(keep in subsequence((0..48).collect::<Vec<_>>(), 6..=20)) {
        let p = polytope();
        let q = p.restrict(&keep).unwrap();
        let (gp, gq) = (p.gram_matrix(), q.gram_matrix());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                prop_assert_eq!(&gq[(a, b)], &gp[(i, j)]);
            }
        }
    }
}
