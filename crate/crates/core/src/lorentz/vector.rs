use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactScalar;
use crate::error::{Error, Result};

/// Causal character of a vector under the signature `(d, 1)` form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VectorKind {
    SpaceLike,
    TimeLike,
    LightLike,
}

/// A vector of `R^{d,1}` with exact coordinates; the last coordinate is the time-like one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LorentzVector {
    coords: Vec<ExactScalar>,
}

impl LorentzVector {
    pub fn new(coords: Vec<ExactScalar>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    /// Coordinates given as `(numerator, denominator)` pairs.
    pub fn from_fracs(coords: &[(i64, i64)]) -> Self {
        Self::new(coords.iter().map(|&(n, d)| ExactScalar::from_frac(n, d)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![ExactScalar::zero(); dim + 1])
    }

    /// The `i`-th standard basis vector of `R^{d,1}`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = ExactScalar::one();
        v
    }

    /// Hyperbolic dimension `d`, one less than the coordinate count.
    pub fn dim(&self) -> usize {
        self.coords.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<ExactScalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ExactScalar::is_zero)
    }

    pub fn inner(&self, other: &Self) -> Result<ExactScalar> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { left: self.len(), right: other.len() });
        }
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &Self) -> ExactScalar {
        let n = self.coords.len();
        let mut acc = ExactScalar::zero();
        for i in 0..n - 1 {
            acc += &self.coords[i] * &other.coords[i];
        }
        acc -= &(&self.coords[n - 1] * &other.coords[n - 1]);
        acc
    }

    /// `⟨x, x⟩`.
    pub fn norm(&self) -> ExactScalar {
        self.inner_unchecked(self)
    }

    pub fn classify(&self) -> VectorKind {
        match self.norm().signum() {
            1 => VectorKind::SpaceLike,
            -1 => VectorKind::TimeLike,
            _ => VectorKind::LightLike,
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect())
    }

    /// The first `k` coordinates.
    pub fn head(&self, k: usize) -> Vec<ExactScalar> {
        self.coords[..k].to_vec()
    }

    pub fn last(&self) -> &ExactScalar {
        self.coords.last().expect("empty Lorentz vector")
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(ExactScalar::to_f64).collect()
    }

    /// Canonical representative of the ray through `self` with positive last coordinate.
    ///
    /// Rational rays are scaled to coprime integers; rays with irrational
    /// ratios are scaled so the last coordinate is 1. Returns `None` when the
    /// last coordinate is zero.
    pub fn normalized_ray(&self) -> Option<Self> {
        let last = self.last();
        if last.is_zero() {
            return None;
        }
        let scaled = self.scale(&last.recip()?);
        if !scaled.coords.iter().all(ExactScalar::is_rational) {
            return Some(scaled);
        }
        let mut lcm = BigInt::one();
        for c in &scaled.coords {
            lcm = lcm.lcm(c.rat_part().denom());
        }
        let ints: Vec<BigInt> =
            scaled.coords.iter().map(|c| c.rat_part().numer() * (&lcm / c.rat_part().denom())).collect();
        let mut gcd = BigInt::zero();
        for n in &ints {
            gcd = gcd.gcd(n);
        }
        let gcd = gcd.abs();
        Some(Self::new(ints.into_iter().map(|n| ExactScalar::from_rational((n / &gcd).into())).collect()))
    }
}

/// Reflection `x ↦ x - 2⟨x, u⟩u` in the hyperplane orthogonal to the unit space-like `u`.
pub fn reflect(u: &LorentzVector, x: &LorentzVector) -> Result<LorentzVector> {
    let norm = u.norm();
    if !norm.is_one() {
        return Err(Error::NonUnitNormal(norm.to_string()));
    }
    let ip = x.inner(u)?;
    let two = ExactScalar::from_int(2);
    Ok(x.sub(&u.scale(&(&two * &ip))))
}

pub fn lorentz_inner(x: &LorentzVector, y: &LorentzVector) -> Result<ExactScalar> {
    x.inner(y)
}

pub fn classify_vector(x: &LorentzVector) -> VectorKind {
    x.classify()
}

impl fmt::Display for LorentzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LorentzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u5() -> LorentzVector {
        // (0,0,0,0,-3/(2√2),-1/(2√2)) = (0,0,0,0,-3√2/4,-√2/4)
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

    #[test]
    fn inner_product_examples() {
        let x = LorentzVector::from_ints(&[1, 0, 0, 0, 1, 1]);
        let s = LorentzVector::from_fracs(&[(1, 1), (0, 1), (0, 1), (0, 1), (-1, 2), (1, 2)]);
        assert_eq!(lorentz_inner(&x, &s).unwrap(), ExactScalar::zero());
        let t = LorentzVector::basis(5, 5);
        assert_eq!(lorentz_inner(&t, &t).unwrap(), ExactScalar::from_int(-1));
        let xm = LorentzVector::from_ints(&[-1, 0, 0, 0, 1, 1]);
        assert_eq!(lorentz_inner(&x, &xm).unwrap(), ExactScalar::from_int(-1));
    }

    #[test]
    fn inner_dimension_mismatch() {
        let a = LorentzVector::from_ints(&[1, 0, 0]);
        let b = LorentzVector::from_ints(&[1, 0, 0, 0]);
        assert!(matches!(a.inner(&b), Err(Error::DimensionMismatch { left: 3, right: 4 })));
    }

    #[test]
    fn classification() {
        assert_eq!(LorentzVector::from_ints(&[1, 0, 0, 0, 1, 1]).classify(), VectorKind::SpaceLike);
        assert_eq!(LorentzVector::from_ints(&[0, 0, 0, 0, 1, 1]).classify(), VectorKind::LightLike);
        assert_eq!(LorentzVector::basis(5, 5).classify(), VectorKind::TimeLike);
    }

    #[test]
    fn reflection_swaps_type_one_and_two() {
        let u = u5();
        assert!(u.norm().is_one());
        let x = LorentzVector::from_ints(&[1, 0, 0, 0, 1, 1]);
        // ⟨X+, u5⟩ = -1/√2
        assert_eq!(x.inner(&u).unwrap(), ExactScalar::from_parts((0, 1), (-1, 2)));
        let expected = LorentzVector::from_fracs(&[(1, 1), (0, 1), (0, 1), (0, 1), (-1, 2), (1, 2)]);
        assert_eq!(reflect(&u, &x).unwrap(), expected);
        assert_eq!(reflect(&u, &u).unwrap(), u.neg());
        let e1 = LorentzVector::basis(5, 0);
        assert_eq!(reflect(&u, &e1).unwrap(), e1);
    }

    #[test]
    fn reflection_rejects_non_unit() {
        let u = LorentzVector::from_ints(&[2, 0, 0]);
        assert!(matches!(reflect(&u, &u), Err(Error::NonUnitNormal(_))));
    }

    #[test]
    fn ray_normalization() {
        let v = LorentzVector::from_fracs(&[(-1, 3), (2, 3), (0, 1), (-2, 3)]);
        assert_eq!(v.normalized_ray().unwrap(), LorentzVector::from_ints(&[1, -2, 0, 2]));
        assert!(LorentzVector::from_ints(&[1, 0, 0]).normalized_ray().is_none());
    }
}
