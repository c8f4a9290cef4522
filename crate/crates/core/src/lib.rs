//! Stochastic matrices whose eigenvalues sit on the boundary of the
//! Karpelevič region Θₙ.
//!
//! The crate classifies every boundary arc of Θₙ by its Farey pair, builds
//! the reduced Ito polynomial of each arc, constructs the stochastic
//! matrices realizing those polynomials (Types 0, I, II and III), checks
//! them exactly against two independent characteristic-polynomial routes,
//! and traces the arcs numerically.
//!
//! Everything except [`boundary`] is exact rational arithmetic.

pub mod algebra;
pub mod boundary;
pub mod digraph;
pub mod farey;
pub mod itopoly;
pub mod realize;

mod error;

pub use algebra::{charpoly_exact, RatMatrix, RatPoly, RatScalar, StochMatrix};
pub use boundary::{ArcTrace, ComplexPoint};
pub use digraph::WeightedDigraph;
pub use error::Error;
pub use farey::{ArcParams, ArcType, Fraction, FareyPair};
pub use itopoly::ItoInstance;
pub use realize::{Composition, VerificationReport};

/// Default bound on exhaustive permutation searches; overridden by the
/// `KARPELEVIC_MAX_BRUTE` environment variable in the CLI.
pub const DEFAULT_MAX_BRUTE: usize = 10;
