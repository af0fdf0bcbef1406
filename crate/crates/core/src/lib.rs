//! Exact computation of Riordan arrays, their numerator polynomials
//! (generalized Euler and Narayana polynomials), generalized Lagrange
//! series, and the finite transformation matrices connecting them.
//!
//! All arithmetic is exact rational arithmetic; nothing in this crate
//! ever rounds. Truncated power series carry an explicit order, and
//! every identity is checked coefficientwise.

pub mod lagrange;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod ring;
pub mod riordan;
pub mod series;
pub mod transforms;
pub mod verify;

pub use matrix::FiniteOperator;
pub use riordan::{Flavor, NumeratorResult, SeriesPair};
pub use poly::Poly;
pub use rat::Rat;

pub use series::{QSeries, Series};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("division by a series whose constant term is not invertible")]
    NonUnitDivisor,
    #[error("composition requires the inner series to have zero constant term")]
    InnerConstantNotZero,
    #[error("reversion requires zero constant term and invertible linear coefficient")]
    NotReversible,
    #[error("logarithm requires constant term one")]
    LogConstantNotOne,
    #[error("exponential requires zero constant term")]
    ExpConstantNotZero,
    #[error("series has no term of that order")]
    OrderOutOfRange,
    #[error("polynomial degree {degree} exceeds reversal window {window}")]
    ReverseDegree { degree: usize, window: usize },
    #[error("stirling index out of range: k = {k} > n = {n}")]
    StirlingRange { n: usize, k: usize },
    #[error("polynomial is not divisible by x")]
    NotDivisibleByX,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("polynomial degree {degree} does not fit operator dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("operator dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid matrix request: {0}")]
    BadMatrixRequest(String),
    #[error("invalid series pair: {0}")]
    BadPair(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
