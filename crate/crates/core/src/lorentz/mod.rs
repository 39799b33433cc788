//! Exact Lorentzian linear algebra over Q(√2): scalars, vectors of `R^{d,1}`,
//! reflections and Gaussian elimination.

mod linalg;
mod scalar;
mod vector;

pub use linalg::{solve_kernel, span_rank, Matrix};
pub use scalar::ExactScalar;
pub use vector::{classify_vector, lorentz_inner, reflect, LorentzVector, VectorKind};
