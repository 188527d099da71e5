use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    /// Non-square or asymmetric matrix input.
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    /// Dimension mismatches and other inconsistent arguments.
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// A block that must be invertible for a valid Laplacian is singular.
    #[error("malformed laplacian: {0}")]
    MalformedLaplacian(String),

    /// The Schur restriction is not a scalar multiple of the boundary Laplacian.
    #[error("schur restriction is not proportional to D: {schur}")]
    NotProportional { schur: String },

    #[error("no monotone chain: {0}")]
    NoChain(NoChainReason),

    #[error("no path from vertex {from} to vertex {to} inside the subset")]
    NoPath { from: usize, to: usize },

    #[error("invalid address: cell {cell} out of range (cell count {cell_count})")]
    InvalidAddress { cell: usize, cell_count: usize },

    /// The function handed to a verifier is not harmonic off the exceptional set.
    #[error("precondition violated at vertex {vertex}: (Hv)(p) = {residual}")]
    PreconditionViolated { vertex: usize, residual: String },

    #[error("parse error: {0}")]
    Parse(String),
}

/// Which hypothesis of the monotone-chain construction failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoChainReason {
    #[error("v is constant")]
    ConstantFunction,
    #[error("vertex {0} is a boundary vertex")]
    BoundaryStart(usize),
    #[error("v is not harmonic at interior vertex {0}")]
    NotHarmonic(usize),
    #[error("every neighbour of vertex {0} has the same value")]
    NoDifferingNeighbour(usize),
    #[error("vertex {0} has no admissible successor")]
    Stuck(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
