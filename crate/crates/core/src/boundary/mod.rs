//! Numerical tracing of the boundary arcs of Θₙ.
//!
//! This is the only floating-point part of the crate. Each arc is followed
//! by root continuation in α from its large-denominator endpoint (α = 1),
//! where the traced root is simple, down to α = 0.

mod emit;
mod region;
mod roots;
mod trace;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{charpoly_exact, StochMatrix};
use crate::farey::FareyError;

pub use emit::{region_json, trace_csv, region_svg};
pub use region::{contains, Region, DEFAULT_SAMPLES};
pub use roots::{poly_eval, poly_roots};
pub use trace::{arc_coefficients, region_boundary, trace_arc, ArcTrace, Sample};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundaryError {
    #[error("need at least 2 samples per arc, got {0}")]
    SampleCount(usize),
    #[error("polynomial must have degree at least 1 with a nonzero leading coefficient")]
    Degenerate,
    #[error("root finder did not converge for degree {degree} (residual {residual:e})")]
    NonConvergence { degree: usize, residual: f64 },
    #[error("no root near the expected endpoint {expected} (closest at distance {distance:e})")]
    EndpointMismatch { expected: ComplexPoint, distance: f64 },
    #[error("alpha = {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error(transparent)]
    Farey(#[from] FareyError),
}

/// Distinct eigenvalues of `m`: roots of the square-free part of its exact
/// characteristic polynomial, so each is a simple root when floated.
pub fn spectrum(m: &StochMatrix) -> Result<Vec<ComplexPoint>, BoundaryError> {
    let p = charpoly_exact(m).squarefree();
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    poly_roots(&p.to_f64())
}

/// A finite complex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        debug_assert!(re.is_finite() && im.is_finite());
        ComplexPoint { re, im }
    }

    /// `e^{2πi p/q}`.
    pub fn root_of_unity(p: u64, q: u64) -> Self {
        Complex64::from_polar(1.0, std::f64::consts::TAU * p as f64 / q as f64).into()
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn arg(&self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn conj(&self) -> Self {
        ComplexPoint::new(self.re, -self.im)
    }

    pub fn dist(&self, other: &ComplexPoint) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint::new(z.re, z.im)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(z: ComplexPoint) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // adding 0.0 turns -0.0 into 0.0
        let re = self.re + 0.0;
        if self.im < 0.0 {
            write!(f, "{re:.6}-{:.6}i", -self.im)
        } else {
            write!(f, "{re:.6}+{:.6}i", self.im + 0.0)
        }
    }
}
