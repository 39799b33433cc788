use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid exact scalar {0:?}")]
    ScalarParse(String),

    #[error("reflection vector must have Lorentzian norm exactly 1, got {0}")]
    NonUnitNormal(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("facets {0} and {1} have identical normals")]
    IdenticalNormals(String, String),

    #[error("facet {label} is not a unit space-like vector (norm {norm})")]
    NotUnitFacet { label: String, norm: String },

    #[error("polytope is not right-angled: {first} and {second} meet at inner product {inner}")]
    NotRightAngled { first: String, second: String, inner: String },

    #[error("facet normals do not span the {0}-dimensional Lorentzian space")]
    NotSpanning(usize),

    #[error("facet {0} has no family tag")]
    MissingFamily(String),

    #[error("facet index {index} out of range for {len} facets")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown facet label {0:?}")]
    UnknownLabel(String),

    #[error("polytope has infinite volume")]
    InfiniteVolume,

    #[error("finite-volume methods disagree: combinatorial={combinatorial}, ray oracle={ray_oracle}; {diagnostics}")]
    VolumeMethodsDisagree { combinatorial: bool, ray_oracle: bool, diagnostics: String },

    #[error("permutation does not preserve the Gram matrix at ({0}, {1})")]
    NotGramPreserving(usize, usize),

    #[error("symmetry is not coherent with the cube map: {0}")]
    NotFamilyCoherent(String),

    #[error("point is space-like and does not lie in hyperbolic space")]
    SpaceLikePoint,

    #[error("point lies outside the closed unit ball (|y| = {0})")]
    OutsideBall(f64),

    #[error("invalid facet selection: {0}")]
    InvalidSelection(String),

    #[error("unexpected cube incidence for {0}")]
    UnpredictablePair(String),

    #[error("malformed polytope JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
