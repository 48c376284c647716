use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field GF({p}^{k}) exceeds the configured cap")]
    CapExceeded { p: u64, k: usize },
    #[error("modulus is not monic irreducible of degree {0}")]
    BadModulus(usize),
    #[error("degree {source_degree} does not divide degree {target_degree}")]
    IncompatibleDegrees {
        source_degree: usize,
        target_degree: usize,
    },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("scalar is not an eigenvalue")]
    NotAnEigenvalue,
    #[error("characteristic polynomial does not split over the matrix field")]
    FieldTooSmall,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("group closure exceeds {0} elements")]
    OrderCapExceeded(usize),
    #[error("element order exceeds {0}")]
    ElementOrderCapExceeded(u64),
    #[error("cocycle system needs {needed} unknowns, cap is {cap}")]
    UnknownsCapExceeded { needed: usize, cap: usize },
    #[error("spin of the zero vector")]
    ZeroVector,
    #[error("module of dimension zero")]
    ZeroModule,
    #[error("meataxe inconclusive after {0} attempts")]
    SeedExhausted(usize),
    #[error("module is not semisimple")]
    NotSemisimple,
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("condition (C) criteria disagree: {0}")]
    CriterionMismatch(String),
    #[error("matrix is not nilpotent to order {0}")]
    NotNilpotentToOrderL(u64),
    #[error("matrix is not unipotent to order {0}")]
    NotUnipotentToOrderL(u64),
    #[error("series order {l} differs from field characteristic {p}")]
    CharacteristicMismatch { l: u64, p: u64 },
    #[error("enumeration box holds {0} points, over the cap")]
    BoxOverflow(u128),
    #[error("torus data invalid: {0}")]
    InvalidTorus(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
