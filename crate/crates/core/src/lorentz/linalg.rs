//! Exact Gaussian elimination over Q(√2).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ExactScalar, LorentzVector};
use crate::error::{Error, Result};

/// Dense row-major matrix with exact entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    /// The Lorentzian form `diag(1, …, 1, -1)` of size `n`.
    pub fn lorentz_form(n: usize) -> Self {
        let mut m = Self::identity(n);
        m[(n - 1, n - 1)] = ExactScalar::from_int(-1);
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[LorentzVector]) -> Self {
        let n = cols.first().map_or(0, LorentzVector::len);
        let mut m = Self::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = v.coords()[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> LorentzVector {
        LorentzVector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &LorentzVector) -> Result<LorentzVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { left: self.cols, right: v.len() });
        }
        Ok(LorentzVector::new(
            (0..self.rows).map(|i| self.row(i).iter().zip(v.coords()).map(|(a, b)| a * b).sum()).collect(),
        ))
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(ExactScalar::is_rational)
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Pivots are the first nonzero entry in each column.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].recip().expect("nonzero pivot");
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    let v = &self[(r, j)] * &inv;
                    self[(r, j)] = v;
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self[(r, j)];
                    self[(i, j)] -= &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![ExactScalar::zero(); self.cols];
            x[free] = ExactScalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -&m[(row, free)];
            }
            basis.push(x);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = ExactScalar::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn check_dims(vectors: &[LorentzVector]) -> Result<usize> {
    let n = vectors.first().ok_or(Error::EmptyInput("no vectors given"))?.len();
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: v.len() });
        }
    }
    Ok(n)
}

/// Rows `J v`, so that `row · x = ⟨x, v⟩`.
fn form_rows(vectors: &[LorentzVector]) -> Matrix {
    Matrix::from_rows(
        vectors
            .iter()
            .map(|v| {
                let mut row = v.coords().to_vec();
                let last = row.len() - 1;
                row[last] = -&row[last];
                row
            })
            .collect(),
    )
}

/// Exact basis of the common Lorentz-orthogonal complement `{x : ⟨x, vᵢ⟩ = 0 ∀i}`.
pub fn solve_kernel(vectors: &[LorentzVector]) -> Result<Vec<LorentzVector>> {
    check_dims(vectors)?;
    Ok(form_rows(vectors).nullspace().into_iter().map(LorentzVector::new).collect())
}

/// Rank of the span of the given vectors.
pub fn span_rank(vectors: &[LorentzVector]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    check_dims(vectors)?;
    Ok(form_rows(vectors).rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_single_vector() {
        let k = solve_kernel(&[LorentzVector::basis(5, 0)]).unwrap();
        assert_eq!(k.len(), 5);
        for v in &k {
            assert!(v.inner(&LorentzVector::basis(5, 0)).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_of_full_rank_is_empty() {
        let basis: Vec<_> = (0..6).map(|i| LorentzVector::basis(5, i)).collect();
        assert!(solve_kernel(&basis).unwrap().is_empty());
        assert_eq!(span_rank(&basis).unwrap(), 6);
    }

    #[test]
    fn kernel_rejects_empty_and_ragged() {
        assert!(solve_kernel(&[]).is_err());
        let a = LorentzVector::from_ints(&[1, 0]);
        let b = LorentzVector::from_ints(&[1, 0, 0]);
        assert!(solve_kernel(&[a, b]).is_err());
    }

    #[test]
    fn inverse_roundtrip_with_sqrt2() {
        let r2 = ExactScalar::sqrt2();
        let m =
            Matrix::from_rows(vec![vec![r2.clone(), ExactScalar::one()], vec![ExactScalar::from_int(3), r2.clone()]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        let singular =
            Matrix::from_rows(vec![vec![r2.clone(), ExactScalar::from_int(2)], vec![ExactScalar::one(), r2]]);
        assert!(singular.inverse().is_none());
    }
}
