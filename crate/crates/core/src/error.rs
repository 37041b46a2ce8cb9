use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zeros is undefined")]
    BothZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("automorphism group exceeds cap {0}")]
    CapExceeded(usize),
    #[error("glue vectors do not define an integral overlattice: {0}")]
    NonIntegralGluing(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("lattice is definite, it has no isotropic vectors")]
    DefiniteInput,
    #[error("vector is not primitive")]
    NonPrimitive,
    #[error("vector does not lie in the lattice")]
    NotInLattice,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("arcs are not in general position after {0} perturbation retries")]
    NonGeneric(usize),
    #[error("integer overflow while converting `{0}`")]
    Overflow(&'static str),
    #[error("cusp classes are not labeled")]
    UnlabeledClasses,
    #[error("at least two hyperplane records are required")]
    TooFewRecords,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
