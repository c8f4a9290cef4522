//! Exact rational arithmetic: scalars, polynomials, matrices and their
//! characteristic polynomials. Nothing in here ever rounds.

mod charpoly;
mod matrix;
mod poly;
mod rational;

use thiserror::Error;

pub use charpoly::{charpoly_exact, charpoly_of};
pub use matrix::{cyclic_shift_matrix, MatrixJson, RatMatrix, StochMatrix};
pub use poly::RatPoly;
pub use rational::{
    display_rat, format_rat, in_closed_unit, in_open_unit, int, parse_rat, pow, rat, rat_to_f64,
    RatScalar,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot parse {0:?} as an exact rational (expected \"p/q\" or an integer)")]
    ParseRational(String),
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix must have order at least 1")]
    EmptyMatrix,
    #[error("entry ({row}, {col}) = {value} lies outside [0, 1]")]
    EntryOutOfRange { row: usize, col: usize, value: String },
    #[error("row {row} sums to {sum}, not 1")]
    RowSum { row: usize, sum: String },
    #[error("malformed matrix json: {0}")]
    Json(String),
}
