use thiserror::Error;

/// Errors produced by the estimation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("iteration order must be >= 1")]
    InvalidOrder,

    #[error("series has {actual} values but grid has {expected} points")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("interval [{a}, {b}] is outside the grid span [{start}, {end}]")]
    OutOfRange {
        a: f64,
        b: f64,
        start: f64,
        end: f64,
    },

    #[error("time {0} is not a grid point")]
    NotOnGrid(f64),

    #[error("window of {window} samples at index {index} starts before the usable data (first usable index {first})")]
    WindowUnderflow {
        index: usize,
        window: usize,
        first: usize,
    },

    #[error("series is empty or too short for the requested window")]
    EmptySeries,

    #[error("non-positive price {value} at index {index}")]
    NonPositivePrice { index: usize, value: f64 },

    #[error("series do not share a sampling grid")]
    GridMismatch,

    #[error("factors are not independent at t = {at}: |det| / scale = {ratio:e} < {epsilon:e}")]
    NotIndependent { at: f64, ratio: f64, epsilon: f64 },

    #[error("estimate does not match panel: {0}")]
    EstimateMismatch(String),

    #[error("denominator integral vanishes")]
    ZeroDenominator,

    #[error("beta is zero; relation cannot be reversed")]
    ZeroBeta,

    #[error("every candidate window fails the independence test at t = {at}")]
    AllDegenerate { at: f64 },

    #[error("parse error at row {row}, column `{column}`: {message}")]
    ParseError {
        row: usize,
        column: String,
        message: String,
    },

    #[error("dates not strictly increasing at row {row} ({date})")]
    NonMonotonicDates { row: usize, date: String },

    #[error("datasets share no common dates")]
    EmptyIntersection,

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
