use thiserror::Error;

pub use crate::poly::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("total degree {degree} exceeds the limit {limit}")]
    DegreeLimit { degree: u32, limit: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("the zero polynomial has no Newton polyhedron")]
    ZeroPolynomial,
    #[error("the line κ₁t₁+κ₂t₂=1 with κ=({0}) does not support the Newton polyhedron")]
    NotSupporting(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("polynomial is not κ-homogeneous of degree one for κ=({0})")]
    NotHomogeneous(String),
    #[error("κ₁ = 0: the weight is degenerate, use the trivial factorization")]
    DegenerateWeight,
    #[error("cannot factorize the zero polynomial")]
    Zero,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdaptError {
    #[error("phase must vanish to second order at the origin: {0}")]
    NotFiniteType(String),
    #[error("no adapted coordinates after {steps} steps")]
    StepLimit { steps: usize },
    #[error("no real root of multiplicity greater than the Newton distance")]
    NoPrincipalRoot,
    #[error("principal root is irrational; exact shears are not possible")]
    IrrationalRoot,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Adapt(#[from] AdaptError),
}

impl From<GeometryError> for InvariantError {
    fn from(e: GeometryError) -> Self {
        InvariantError::Adapt(e.into())
    }
}

impl From<FactorError> for InvariantError {
    fn from(e: FactorError) -> Self {
        InvariantError::Adapt(e.into())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("quadrature budget exceeded: {needed} node evaluations needed, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("fit is ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}
