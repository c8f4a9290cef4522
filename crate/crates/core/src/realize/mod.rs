//! Stochastic matrices realizing reduced Ito polynomials.
//!
//! All constructors work with 0-based indices. Printed output (DOT, CLI
//! tables) converts to 1-based row numbers.

mod augment;
mod construct;
mod enumerate;
mod probe;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::digraph::DigraphError;
use crate::itopoly::ItoError;

pub use augment::{type2_augment, AugmentedTypeII};
pub use construct::{
    build_sparsest, type0, type1, type2_connectors, type2_sparsest, type3_alpha_rows, type3_family,
    type3_sparsest, TypeIIIFamilySpec,
};
pub use enumerate::{canonical_rotation, compositions, enumerate_sparsest};
pub use probe::{conjecture_probe, conjecture_probe_with_budget, ProbeOutcome, DEFAULT_PROBE_BUDGET};
pub use verify::{dd_support_check, verify_realization, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("alpha = {0} must lie strictly between 0 and 1")]
    AlphaOutOfRange(String),
    #[error("({0}, {1}) is not a connector between consecutive q-cycles")]
    NotAConnector(usize, usize),
    #[error("connector ({0}, {1}) is already present")]
    DuplicateConnector(usize, usize),
    #[error("connector ({tail}, {head}) rejected: creates cycles of length {lengths:?}, only {allowed} is allowed")]
    EdgeRejected {
        tail: usize,
        head: usize,
        lengths: Vec<usize>,
        allowed: usize,
    },
    #[error("missing value for parameter {0}")]
    MissingParameter(String),
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
    #[error("infeasible instantiation: {0}")]
    Infeasible(String),
    #[error("matrix order {found} differs from the reduced degree {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("{0} arcs have no composition parameterization")]
    NoParameterization(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search budget of {0} nodes exhausted")]
    SearchBudget(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Ito(#[from] ItoError),
}

/// Ordered parts, each below `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<usize>,
    pub bound: usize,
}

impl Composition {
    pub fn new(parts: Vec<usize>, bound: usize) -> Result<Self, RealizeError> {
        if let Some(p) = parts.iter().find(|&&p| p >= bound) {
            return Err(RealizeError::InvalidComposition(format!(
                "part {p} is not below {bound}"
            )));
        }
        Ok(Composition { parts, bound })
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub(crate) fn expect(&self, len: usize, total: usize) -> Result<(), RealizeError> {
        if self.parts.len() != len {
            return Err(RealizeError::InvalidComposition(format!(
                "expected {len} parts, got {}",
                self.parts.len()
            )));
        }
        if self.total() != total {
            return Err(RealizeError::InvalidComposition(format!(
                "parts sum to {}, expected {total}",
                self.total()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn check_open_alpha(alpha: &crate::RatScalar) -> Result<(), RealizeError> {
    if crate::algebra::in_open_unit(alpha) {
        Ok(())
    } else {
        Err(RealizeError::AlphaOutOfRange(crate::algebra::display_rat(alpha)))
    }
}
