pub mod cli;
pub mod cube;
pub mod ends;
pub mod error;
pub mod faces;
pub mod fixtures;
pub mod graph;
pub mod lorentz;
pub mod models;
pub mod polytope;
pub mod symmetry;

pub use error::{Error, Result};
