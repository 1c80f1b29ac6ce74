use thiserror::Error;

use crate::exactpoly::MultiDegree;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous: terms of degree {first} and {second}")]
    NotHomogeneous { first: MultiDegree, second: MultiDegree },
    #[error("generator {index} is not homogeneous: terms of degree {first} and {second}")]
    NonHomogeneousGenerator { index: usize, first: MultiDegree, second: MultiDegree },
    #[error("no monomials of degree {0}")]
    EmptyDegree(MultiDegree),

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("maximal cone {cone} is not smooth")]
    NotSmooth { cone: usize },
    #[error("fan is not complete at facet {facet:?} of maximal cone {cone}")]
    NotComplete { cone: usize, facet: Vec<usize> },
    #[error("grading admits no positive heft vector")]
    NoPositiveGrading,
    #[error("degree matrix is not a valid class map: {0}")]
    InvalidGrading(String),

    #[error("Chow ring rank mismatch in codimension {codim}: expected {expected}, found {found}")]
    RankMismatch { codim: usize, expected: i64, found: usize },
    #[error("non-integer structure constant in the Chow ring")]
    NonIntegerCoefficient,
    #[error("maximal cones disagree on the degree normalization")]
    NormalizationInconsistent,
    #[error("multidegree {0} has no integer lift to a divisor")]
    NoIntegerLift(MultiDegree),

    #[error("fan admits no ample class; the variety is not projective")]
    NotProjective,

    #[error("the subscheme is empty")]
    EmptySubscheme,
    #[error("the ideal defines the whole variety")]
    WholeSpace,
    #[error("residual scheme R_{d} has the wrong dimension")]
    DimensionFailure { d: usize },
    #[error("inconsistent intersection-number system for R_{d}")]
    InconsistentSystem { d: usize },
    #[error("non-integer class coefficients for R_{d}")]
    NonIntegerSolution { d: usize },
    #[error("gave up after {rounds} resampling rounds: {last}")]
    RetriesExhausted { rounds: u32, last: Box<Error> },
}

impl Error {
    /// Stable short code used in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "E_INPUT",
            Error::Syntax { .. } => "E_SYNTAX",
            Error::UnknownVariable { .. } => "E_UNKNOWN_VARIABLE",
            Error::ZeroPolynomial => "E_ZERO_POLYNOMIAL",
            Error::NotHomogeneous { .. } | Error::NonHomogeneousGenerator { .. } => "E_NOT_HOMOGENEOUS",
            Error::EmptyDegree(_) => "E_EMPTY_DEGREE",
            Error::NotZeroDimensional => "E_NOT_ZERO_DIMENSIONAL",
            Error::NotSmooth { .. } => "E_NOT_SMOOTH",
            Error::NotComplete { .. } => "E_NOT_COMPLETE",
            Error::NoPositiveGrading => "E_NO_POSITIVE_GRADING",
            Error::InvalidGrading(_) => "E_INVALID_GRADING",
            Error::RankMismatch { .. } => "E_RANK_MISMATCH",
            Error::NonIntegerCoefficient => "E_NON_INTEGER_COEFFICIENT",
            Error::NormalizationInconsistent => "E_NORMALIZATION",
            Error::NoIntegerLift(_) => "E_NO_INTEGER_LIFT",
            Error::NotProjective => "E_NOT_PROJECTIVE",
            Error::EmptySubscheme => "E_EMPTY_SUBSCHEME",
            Error::WholeSpace => "E_WHOLE_SPACE",
            Error::DimensionFailure { .. } => "E_DIMENSION_FAILURE",
            Error::InconsistentSystem { .. } => "E_INCONSISTENT_SYSTEM",
            Error::NonIntegerSolution { .. } => "E_NON_INTEGER_SOLUTION",
            Error::RetriesExhausted { .. } => "E_RETRIES_EXHAUSTED",
        }
    }

    /// Process exit status for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Syntax { .. } | Error::UnknownVariable { .. } => 2,
            Error::ZeroPolynomial | Error::NotHomogeneous { .. } | Error::NonHomogeneousGenerator { .. } | Error::EmptyDegree(_) => 3,
            Error::NotSmooth { .. } | Error::NotComplete { .. } | Error::NoPositiveGrading | Error::InvalidGrading(_) | Error::NotProjective => 4,
            Error::EmptySubscheme | Error::WholeSpace => 5,
            Error::DimensionFailure { .. } | Error::InconsistentSystem { .. } | Error::NonIntegerSolution { .. } | Error::RetriesExhausted { .. } => 6,
            Error::NotZeroDimensional
            | Error::RankMismatch { .. }
            | Error::NonIntegerCoefficient
            | Error::NormalizationInconsistent
            | Error::NoIntegerLift(_) => 70,
        }
    }

    /// Errors that a fresh random draw may cure.
    pub fn is_retryable(&self) -> bool {
        matches!(self, Error::DimensionFailure { .. } | Error::InconsistentSystem { .. } | Error::NonIntegerSolution { .. } | Error::NotZeroDimensional)
    }
}
