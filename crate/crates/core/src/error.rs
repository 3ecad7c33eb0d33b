use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ragged matrix rows")]
    Ragged,
    #[error("linear Diophantine system has no integer solution")]
    NoSolution,
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("not an isometry: (M^T G M)[{row}][{col}] = {found}, expected {expected}")]
    NotAnIsometry {
        row: usize,
        col: usize,
        found: String,
        expected: String,
    },
    #[error("basis matrix is singular; sublattice is not of finite index")]
    SingularBasis,
    #[error("vector belongs to lattice `{found}`, expected `{expected}`")]
    LatticeMismatch { expected: String, found: String },
    #[error("lattice signature is ({0}, {1}), expected hyperbolic (1, n)")]
    NotHyperbolic(usize, usize),
    #[error("vector is not in the positive cone (self-pairing {0})")]
    NotPositive(String),
    #[error("vectors lie in opposite components of the positive cone")]
    OppositeCones,
    #[error("vector has self-pairing {0}, roots must have self-pairing -2")]
    NotARoot(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not reciprocal of even degree")]
    NotReciprocal,
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(String),
    #[error("matrix is not invertible modulo {0}")]
    NotInvertibleMod(String),
    #[error("iteration cap {0} exceeded")]
    CapExceeded(u64),
    #[error("isometry does not preserve the sublattice")]
    DoesNotDescend,
    #[error("chamber walk did not terminate within {0} reflections")]
    WalkDiverged(u64),
    #[error("chamber violation: {0}")]
    ChamberViolation(String),
    #[error("Salem assertion failed: {0}")]
    SalemAssertion(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
