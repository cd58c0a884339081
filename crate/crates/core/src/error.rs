use thiserror::Error;

pub type Result<T, E = WeylError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators span a subspace of rank {rank} < {dim}; the lattice must be nondegenerate")]
    NondegenerateViolation { rank: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector {0} is not a lattice point")]
    NotMember(String),
    #[error("lattice coordinate does not fit in 64 bits")]
    CoordinateOverflow,
    #[error("the chosen lattice points are linearly dependent")]
    SingularBasis,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("block shape violation: {0}")]
    BlockShapeViolation(String),
    #[error("character values must be nonzero")]
    ZeroCharacterValue,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("elements belong to different algebras")]
    SignatureMismatch,
    #[error("element is not in A (it has a nonzero derivation degree)")]
    NotInA,
    #[error("element is not in F[D]")]
    NotInFD,
    #[error("element is zero")]
    ZeroElement,
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix is not in Aut2(Gamma): {0}")]
    NotInAut2(String),
    #[error("composition involving sigma_1 is not supported in normal form")]
    Sigma1NotSupported,
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("lattice is not mapped onto the target lattice: {0}")]
    LatticeNotMapped(String),
    #[error("homomorphism check failed: {0}")]
    HomomorphismCounterexample(String),
    #[error("invariants differ: {0}")]
    InvariantMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for WeylError {
    fn from(e: serde_json::Error) -> Self {
        WeylError::Json(e.to_string())
    }
}
