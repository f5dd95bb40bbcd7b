use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("non-admissible relation: {0}")]
    NonAdmissible(String),
    #[error("algebra is not finite-dimensional within path length {0}")]
    NotFiniteDimensional(usize),
    #[error("composition escapes the spanned space: {0}")]
    CompositionEscapes(String),
    #[error("endomorphism ring is not local: {0}")]
    NotLocal(String),
    #[error("algebra axiom violated: {0}")]
    AlgebraAxiom(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("subspace is not a submodule at vertex {0}")]
    NotSubmodule(usize),
    #[error("d^2 != 0 at degree {0}")]
    DifferentialSquare(i32),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not in add(T): {0}")]
    NotInAdd(String),
    #[error("mutation leaves the 2-term window: {0}")]
    NotTwoTerm(String),
    #[error("degenerate approximation: {0}")]
    DegenerateApproximation(String),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("lift inconsistency: {0}")]
    LiftInconsistency(String),
    #[error("torsion decomposition failed: {0}")]
    Torsion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
