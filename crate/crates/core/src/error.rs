use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node index {0} is outside 1..=4")]
    InvalidNode(u8),
    #[error("invalid signed permutation: {0}")]
    InvalidWeylElement(String),
    #[error("{element} is not a minimal coset representative for P{parabolic}")]
    NotMinimalRep { element: String, parabolic: u8 },
    #[error("classes belong to different parabolics (P{0} vs P{1})")]
    ParabolicMismatch(u8, u8),
    #[error("weight {0} is not in the weight lattice")]
    NotInWeightLattice(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("sum of the triple is not in the root lattice")]
    SumNotInRootLattice,
    #[error("cone is not pointed (lineality dimension {0})")]
    NotPointed(usize),
    #[error("cone has dimension {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("non-integral structure constant {0}")]
    NonIntegral(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fixture {name} failed its checksum (expected {expected}, got {actual})")]
    Checksum {
        name: String,
        expected: String,
        actual: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
