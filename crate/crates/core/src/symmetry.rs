//! Symmetries of a polytope as Gram-preserving facet permutations, their
//! realization as Lorentz matrices, and the action induced on the cube
//! diagram.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::{cubes, incidence, phi, CubeFace, Incidence};
use crate::error::{Error, Result};
use crate::lorentz::{reflect, ExactScalar, LorentzVector, Matrix};
use crate::polytope::{Family, PolytopeSpec, PositionTable};

/// A permutation of facet indices, `i ↦ mapping[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FacetPermutation {
    mapping: Vec<usize>,
}

impl FacetPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidSelection(format!("{mapping:?} is not a permutation")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self { mapping: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Self { mapping: inv }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.mapping[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.mapping[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Cycle notation over labels, `"()"` for the identity.
    pub fn cycle_notation(&self, labels: &[&str]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles.iter().map(|c| format!("({})", c.iter().map(|&i| labels[i]).collect::<Vec<_>>().join(" "))).collect()
    }

    /// Checks `⟨v_{σ(i)}, v_{σ(j)}⟩ = ⟨vᵢ, vⱼ⟩` for every pair.
    pub fn check_gram(&self, p: &PolytopeSpec) -> Result<()> {
        self.check_gram_with(&p.positions())
    }

    /// As [`check_gram`](Self::check_gram), against precomputed inner products.
    pub fn check_gram_with(&self, table: &PositionTable) -> Result<()> {
        if self.len() != table.len() {
            return Err(Error::DimensionMismatch { left: table.len(), right: self.len() });
        }
        let n = self.len();
        for i in 0..n {
            for j in i..n {
                if table.inner(i, j) != table.inner(self.apply(i), self.apply(j)) {
                    return Err(Error::NotGramPreserving(i, j));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub generators: Vec<FacetPermutation>,
    /// All elements in increasing order; the identity comes first.
    pub elements: Vec<FacetPermutation>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &FacetPermutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// The group generated by `generators` on `n` points.
    pub fn generated_by(n: usize, generators: Vec<FacetPermutation>) -> Self {
        let elements = closure(n, &generators);
        Self { generators, elements }
    }

    /// Elements as given, with a greedily chosen generating set.
    fn from_elements(n: usize, mut elements: Vec<FacetPermutation>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators = Vec::new();
        let mut span: HashSet<FacetPermutation> = [FacetPermutation::identity(n)].into();
        for g in &elements {
            if !span.contains(g) {
                generators.push(g.clone());
                span = closure(n, &generators).into_iter().collect();
            }
        }
        Self { generators, elements }
    }
}

fn closure(n: usize, generators: &[FacetPermutation]) -> Vec<FacetPermutation> {
    let id = FacetPermutation::identity(n);
    let mut seen: HashSet<FacetPermutation> = [id.clone()].into();
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Every Gram-preserving permutation of the facets.
///
/// Depth-first search over facet images with colour refinement on the
/// integer-coded Gram matrix. Since the normals span, each such permutation
/// comes from a unique Lorentz transformation.
pub fn automorphisms(p: &PolytopeSpec) -> Result<SymmetryGroup> {
    p.require_spanning()?;
    let n = p.len();
    let table = p.positions();
    let mut codes: BTreeMap<&ExactScalar, usize> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let next = codes.len();
            codes.entry(table.inner(i, j)).or_insert(next);
        }
    }
    let gram: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| codes[table.inner(i, j)]).collect()).collect();
    let colours = refine_colours(&gram);

    let mut found = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(0, &gram, &colours, &mut image, &mut used, &mut found);

    let group = SymmetryGroup::from_elements(n, found);
    // independent re-check of the search
    group.elements.par_iter().try_for_each(|g| g.check_gram_with(&table))?;
    Ok(group)
}

type Signature = (usize, Vec<(usize, usize)>);

fn refine_colours(gram: &[Vec<usize>]) -> Vec<usize> {
    let n = gram.len();
    let mut colours = vec![0usize; n];
    let mut classes = 1;
    loop {
        let signatures: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|i| {
                let mut row: Vec<(usize, usize)> = (0..n).map(|j| (gram[i][j], colours[j])).collect();
                row.sort_unstable();
                (colours[i], row)
            })
            .collect();
        let mut ids: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in &signatures {
            let next = ids.len();
            ids.entry(s).or_insert(next);
        }
        let next: Vec<usize> = signatures.iter().map(|s| ids[s]).collect();
        let count = ids.len();
        colours = next;
        if count == classes {
            return colours;
        }
        classes = count;
    }
}

fn search(
    i: usize,
    gram: &[Vec<usize>],
    colours: &[usize],
    image: &mut [usize],
    used: &mut [bool],
    found: &mut Vec<FacetPermutation>,
) {
    let n = gram.len();
    if i == n {
        found.push(FacetPermutation { mapping: image.to_vec() });
        return;
    }
    for j in 0..n {
        if used[j] || colours[j] != colours[i] || gram[i][i] != gram[j][j] {
            continue;
        }
        if (0..i).any(|k| gram[i][k] != gram[j][image[k]]) {
            continue;
        }
        image[i] = j;
        used[j] = true;
        search(i + 1, gram, colours, image, used, found);
        used[j] = false;
    }
    image[i] = usize::MAX;
}

/// Solves `A vᵢ = v_{σ(i)}` for many permutations of one polytope, reusing
/// a fixed basis of normals and its inverse.
pub struct Realizer<'a> {
    p: &'a PolytopeSpec,
    vectors: Vec<LorentzVector>,
    basis: Vec<usize>,
    src_inverse: Matrix,
    form: Matrix,
}

impl<'a> Realizer<'a> {
    pub fn new(p: &'a PolytopeSpec) -> Result<Self> {
        let vectors = p.vectors();
        let basis = Matrix::from_columns(&vectors).rref();
        if basis.len() < p.dim() + 1 {
            return Err(Error::NotSpanning(p.dim() + 1));
        }
        let src = Matrix::from_columns(&basis.iter().map(|&i| vectors[i].clone()).collect::<Vec<_>>());
        let src_inverse = src.inverse().ok_or(Error::NotSpanning(p.dim() + 1))?;
        Ok(Self { p, vectors, basis, src_inverse, form: Matrix::lorentz_form(p.dim() + 1) })
    }

    /// The unique matrix `A` with `A vᵢ = v_{σ(i)}`; checked to satisfy `A J Aᵀ = J`.
    pub fn realize(&self, sigma: &FacetPermutation) -> Result<Matrix> {
        if sigma.len() != self.p.len() {
            return Err(Error::DimensionMismatch { left: self.p.len(), right: sigma.len() });
        }
        let v = &self.vectors;
        let dst = Matrix::from_columns(&self.basis.iter().map(|&i| v[sigma.apply(i)].clone()).collect::<Vec<_>>());
        let a = dst.mul(&self.src_inverse)?;
        for (i, vi) in v.iter().enumerate() {
            if a.mul_vec(vi)? != v[sigma.apply(i)] {
                return Err(Error::NotGramPreserving(i, i));
            }
        }
        if a.mul(&self.form)?.mul(&a.transpose())? != self.form {
            return Err(Error::NotGramPreserving(0, 0));
        }
        Ok(a)
    }
}

pub fn realize_matrix(sigma: &FacetPermutation, p: &PolytopeSpec) -> Result<Matrix> {
    Realizer::new(p)?.realize(sigma)
}

/// Realizes every element of the group, in element order.
pub fn realize_all(group: &SymmetryGroup, p: &PolytopeSpec) -> Result<Vec<Matrix>> {
    let r = Realizer::new(p)?;
    group.elements.par_iter().map(|g| r.realize(g)).collect()
}

/// The facet permutation induced by a Lorentz transformation, if it permutes the normals.
pub fn permutation_from_map(
    p: &PolytopeSpec,
    map: impl Fn(&LorentzVector) -> Result<LorentzVector>,
) -> Result<FacetPermutation> {
    let v = p.vectors();
    let index: BTreeMap<&LorentzVector, usize> = v.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mapping = v
        .iter()
        .enumerate()
        .map(|(i, x)| index.get(&map(x)?).copied().ok_or(Error::NotGramPreserving(i, i)))
        .collect::<Result<Vec<_>>>()?;
    FacetPermutation::new(mapping)
}

/// The permutation of facets induced by the reflection in `u`.
pub fn reflection_permutation(p: &PolytopeSpec, u: &LorentzVector) -> Result<FacetPermutation> {
    permutation_from_map(p, |x| reflect(u, x))
}

/// The permutation induced by `x ↦ (x_{π⁻¹(1)}, …, x_{π⁻¹(4)}, x₅, x₆)` on the first four coordinates.
pub fn coordinate_permutation(p: &PolytopeSpec, pi: [usize; 4]) -> Result<FacetPermutation> {
    permutation_from_map(p, |x| {
        let mut c = x.coords().to_vec();
        for k in 0..4 {
            c[pi[k]] = x.coords()[k].clone();
        }
        Ok(LorentzVector::new(c))
    })
}

/// `(0,0,0,0,-3/(2√2),-1/(2√2))`, the mirror exchanging each type I facet with
/// the type II facet on the same cube.
pub fn cube_swap_mirror() -> LorentzVector {
    let z = ExactScalar::zero();
    LorentzVector::new(vec![
        z.clone(),
        z.clone(),
        z.clone(),
        z,
        ExactScalar::from_parts((0, 1), (-3, 4)),
        ExactScalar::from_parts((0, 1), (-1, 4)),
    ])
}

/// All 24 coordinate permutations as a group of facet permutations.
pub fn coordinate_subgroup(p: &PolytopeSpec) -> Result<SymmetryGroup> {
    let gens = vec![coordinate_permutation(p, [1, 0, 2, 3])?, coordinate_permutation(p, [1, 2, 3, 0])?];
    Ok(SymmetryGroup::generated_by(p.len(), gens))
}

/// Orbits of the group generated by `generators`, each sorted, ordered by least element.
pub fn orbits(n: usize, generators: &[FacetPermutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < orbit.len() {
            let i = orbit[k];
            for g in generators {
                let j = g.apply(i);
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPreservationReport {
    pub elements_checked: usize,
    /// Every element maps families I ∪ II and III to themselves.
    pub preserves_classes: bool,
    /// Every element sending some type I facet to type II sends all of type I onto type II.
    pub swaps_wholesale: bool,
    pub swapping_elements: usize,
    pub failures: Vec<String>,
}

impl ClassPreservationReport {
    pub fn passed(&self) -> bool {
        self.preserves_classes && self.swaps_wholesale
    }
}

pub fn verify_facet_class_preservation(group: &SymmetryGroup, p: &PolytopeSpec) -> ClassPreservationReport {
    let fam: Vec<Family> = p.facets().iter().map(|f| f.family).collect();
    let cube_class = |f: Family| matches!(f, Family::TypeI | Family::TypeII);
    let labels = p.labels();
    let mut failures = Vec::new();
    let mut preserves = true;
    let mut wholesale = true;
    let mut swapping = 0;
    for g in &group.elements {
        if (0..p.len()).any(|i| cube_class(fam[i]) != cube_class(fam[g.apply(i)])) {
            preserves = false;
            failures.push(format!("{} mixes families", g.cycle_notation(&labels)));
        }
        let type_one: Vec<usize> = (0..p.len()).filter(|&i| fam[i] == Family::TypeI).collect();
        let hits = type_one.iter().filter(|&&i| fam[g.apply(i)] == Family::TypeII).count();
        if hits > 0 {
            swapping += 1;
            if hits != type_one.len() {
                wholesale = false;
                failures.push(format!("{} sends only {hits} type I facets to type II", g.cycle_notation(&labels)));
            }
        }
    }
    ClassPreservationReport {
        elements_checked: group.order(),
        preserves_classes: preserves,
        swaps_wholesale: wholesale,
        swapping_elements: swapping,
        failures,
    }
}

/// The permutation of the 8 cubes (in [`cubes`] order) induced by a symmetry,
/// read through the map to the cube diagram on type I and type II facets.
pub fn induced_cube_permutation(sigma: &FacetPermutation, p: &PolytopeSpec) -> Result<Vec<usize>> {
    let all = cubes();
    let pos = |c: CubeFace| all.iter().position(|&x| x == c);
    let mut out = vec![usize::MAX; all.len()];
    for (i, f) in p.facets().iter().enumerate() {
        if !matches!(f.family, Family::TypeI | Family::TypeII) {
            continue;
        }
        let g = p.facet(sigma.apply(i))?;
        if !matches!(g.family, Family::TypeI | Family::TypeII) {
            return Err(Error::NotFamilyCoherent(format!("{} is sent to {}", f.label, g.label)));
        }
        let (from, to) = (phi(f)?, phi(g)?);
        let (a, b) = (pos(from).expect("cube"), pos(to).expect("cube"));
        if out[a] != usize::MAX && out[a] != b {
            return Err(Error::NotFamilyCoherent(format!("cube {from} has two images")));
        }
        out[a] = b;
    }
    if out.contains(&usize::MAX) {
        return Err(Error::NotFamilyCoherent("some cube carries no facet".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeActionSummary {
    pub kernel: Vec<FacetPermutation>,
    pub image: BTreeSet<Vec<usize>>,
}

pub fn cube_action(group: &SymmetryGroup, p: &PolytopeSpec) -> Result<CubeActionSummary> {
    let mut kernel = Vec::new();
    let mut image = BTreeSet::new();
    for g in &group.elements {
        let c = induced_cube_permutation(g, p)?;
        if c.iter().enumerate().all(|(i, &j)| i == j) {
            kernel.push(g.clone());
        }
        image.insert(c);
    }
    Ok(CubeActionSummary { kernel, image })
}

/// Number of permutations of the 8 cubes that preserve which pairs of cubes meet.
pub fn cube_symmetry_count() -> usize {
    let all = cubes();
    let meets = |a: usize, b: usize| incidence(&all[a], &all[b]) != Incidence::Disjoint;
    let mut perm: Vec<usize> = (0..all.len()).collect();
    let mut count = 0;
    permute(&mut perm, 0, &mut |p| {
        if (0..8).all(|a| (a + 1..8).all(|b| meets(a, b) == meets(p[a], p[b]))) {
            count += 1;
        }
    });
    count
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub order: usize,
    pub generators: Vec<String>,
    pub orbits: Vec<Vec<String>>,
    pub cube_kernel: Vec<String>,
    pub cube_image_order: usize,
    pub cube_symmetry_count: usize,
    pub coordinate_orbits_type_i: Vec<Vec<String>>,
    /// Whether coordinate permutations alone act transitively on type I facets
    /// (they cannot change signs).
    pub coordinate_action_transitive_on_type_i: bool,
}

pub fn group_report(group: &SymmetryGroup, p: &PolytopeSpec) -> Result<GroupReport> {
    let labels = p.labels();
    let name = |s: &[usize]| s.iter().map(|&i| labels[i].to_string()).collect::<Vec<_>>();
    let action = cube_action(group, p)?;
    let s4 = coordinate_subgroup(p)?;
    let type_one: BTreeSet<usize> = (0..p.len()).filter(|&i| p.facets()[i].family == Family::TypeI).collect();
    let s4_orbits: Vec<Vec<usize>> =
        orbits(p.len(), &s4.generators).into_iter().filter(|o| o.iter().all(|i| type_one.contains(i))).collect();
    Ok(GroupReport {
        order: group.order(),
        generators: group.generators.iter().map(|g| g.cycle_notation(&labels)).collect(),
        orbits: orbits(p.len(), &group.generators).iter().map(|o| name(o)).collect(),
        cube_kernel: action.kernel.iter().map(|g| g.cycle_notation(&labels)).collect(),
        cube_image_order: action.image.len(),
        cube_symmetry_count: cube_symmetry_count(),
        coordinate_action_transitive_on_type_i: s4_orbits.len() == 1 && !type_one.is_empty(),
        coordinate_orbits_type_i: s4_orbits.iter().map(|o| name(o)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_polytope_p;
    use std::sync::OnceLock;

    fn group() -> &'static (PolytopeSpec, SymmetryGroup) {
        static G: OnceLock<(PolytopeSpec, SymmetryGroup)> = OnceLock::new();
        G.get_or_init(|| {
            let p = build_polytope_p();
            let g = automorphisms(&p).unwrap();
            (p, g)
        })
    }

    #[test]
    fn order_and_identity() {
        let (p, g) = group();
        assert_eq!(g.order(), 768);
        assert!(g.elements[0].is_identity());
        assert!(g.contains(&coordinate_permutation(p, [1, 0, 2, 3]).unwrap()));
        assert_eq!(SymmetryGroup::generated_by(p.len(), g.generators.clone()).elements, g.elements);
    }

    #[test]
    fn realizations() {
        let (p, _) = group();
        let id = FacetPermutation::identity(p.len());
        assert_eq!(realize_matrix(&id, p).unwrap(), Matrix::identity(6));

        let swap = coordinate_permutation(p, [1, 0, 2, 3]).unwrap();
        let a = realize_matrix(&swap, p).unwrap();
        let mut expected = Matrix::identity(6);
        expected[(0, 0)] = ExactScalar::zero();
        expected[(1, 1)] = ExactScalar::zero();
        expected[(0, 1)] = ExactScalar::one();
        expected[(1, 0)] = ExactScalar::one();
        assert_eq!(a, expected);

        let u = cube_swap_mirror();
        let r = reflection_permutation(p, &u).unwrap();
        let m = realize_matrix(&r, p).unwrap();
        assert!(m.is_rational());
        for k in 0..6 {
            let e = LorentzVector::basis(5, k);
            assert_eq!(m.mul_vec(&e).unwrap(), reflect(&u, &e).unwrap());
        }
    }

    #[test]
    fn realization_is_a_homomorphism() {
        let (p, g) = group();
        let a = &g.elements[100];
        let b = &g.elements[500];
        let lhs = realize_matrix(a, p).unwrap().mul(&realize_matrix(b, p).unwrap()).unwrap();
        assert_eq!(lhs, realize_matrix(&a.compose(b), p).unwrap());
    }

    #[test]
    fn every_element_is_realized() {
        let (p, g) = group();
        let all = realize_all(g, p).unwrap();
        assert_eq!(all.len(), 768);
        assert!(all.iter().all(Matrix::is_rational));
    }

    #[test]
    fn non_symmetry_is_rejected() {
        let (p, _) = group();
        let mut m: Vec<usize> = (0..48).collect();
        m.swap(0, 8);
        let bad = FacetPermutation::new(m).unwrap();
        assert!(bad.check_gram(p).is_err());
        assert!(realize_matrix(&bad, p).is_err());
        assert!(FacetPermutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn class_preservation() {
        let (p, g) = group();
        let report = verify_facet_class_preservation(g, p);
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.swapping_elements, 384);
        let r = reflection_permutation(p, &cube_swap_mirror()).unwrap();
        for i in 0..8 {
            assert_eq!(p.facets()[r.apply(i)].family, Family::TypeII);
        }
    }

    #[test]
    fn cube_kernel_and_image() {
        let (p, g) = group();
        let action = cube_action(g, p).unwrap();
        let r = reflection_permutation(p, &cube_swap_mirror()).unwrap();
        assert_eq!(action.kernel, vec![FacetPermutation::identity(48), r]);
        assert_eq!(action.image.len(), 384);
        assert_eq!(cube_symmetry_count(), 384);
        assert_eq!(g.order(), action.kernel.len() * action.image.len());
    }

    #[test]
    fn orbit_structure() {
        let (p, g) = group();
        let o = orbits(p.len(), &g.generators);
        assert_eq!(o, vec![(0..16).collect::<Vec<_>>(), (16..48).collect()]);
        assert_eq!(orbits(5, &[]).len(), 5);
        let report = group_report(g, p).unwrap();
        assert!(!report.coordinate_action_transitive_on_type_i);
        assert_eq!(report.coordinate_orbits_type_i, vec![vec!["X+", "Y+", "Z+", "W+"], vec!["X-", "Y-", "Z-", "W-"]]);
    }

    #[test]
    fn cycle_notation() {
        let s = FacetPermutation::new(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(s.cycle_notation(&["a", "b", "c", "d"]), "(a b c)");
        assert_eq!(s.order(), 3);
        assert!(s.compose(&s.inverse()).is_identity());
    }
}
