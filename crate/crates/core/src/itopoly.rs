//! Arc polynomials: the full parametric equation of each Karpelevič arc,
//! its reduction by the extraneous zero roots, and the reduced Ito closed
//! forms of Types 0–III.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{in_closed_unit, int, pow, RatPoly, RatScalar};
use crate::farey::{ArcParams, ArcType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ItoError {
    #[error("alpha = {0} lies outside [0, 1]")]
    AlphaOutOfRange(String),
    #[error("cannot strip zero roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("closed form for {arc} disagrees with the reduced arc polynomial")]
    ClosedFormMismatch { arc: String },
}

/// A reduced Ito polynomial instantiated at an exact α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItoInstance {
    pub arc: ArcParams,
    pub alpha: RatScalar,
    pub beta: RatScalar,
    pub poly: RatPoly,
}

fn binomial_power(q: usize, beta: &RatScalar, d: usize) -> RatPoly {
    // (t^q - beta)^d
    let base = &RatPoly::monomial(RatScalar::one(), q) - &RatPoly::constant(beta.clone());
    base.pow(d)
}

/// `t^s (t^q - β)^d - α^d t^(q d)`, expanded.
pub fn full_arc_poly(arc: &ArcParams, alpha: &RatScalar) -> RatPoly {
    let (q, s, d) = (arc.q as usize, arc.s as usize, arc.d as usize);
    let beta = RatScalar::one() - alpha;
    let left = binomial_power(q, &beta, d).shift_up(s);
    let right = RatPoly::monomial(pow(alpha, d), q * d);
    &left - &right
}

/// Divides out the largest power of `t`, leaving a nonzero constant term.
pub fn reduce(full: &RatPoly) -> Result<RatPoly, ItoError> {
    if full.is_zero() {
        return Err(ItoError::ZeroPolynomial);
    }
    let k = full.zero_root_multiplicity();
    Ok(full.shift_down(k).expect("t^k divides by construction"))
}

/// Closed form of the reduced polynomial for the arc's type.
pub fn closed_form(arc: &ArcParams, alpha: &RatScalar) -> RatPoly {
    let (q, s, d) = (arc.q as usize, arc.s as usize, arc.d as usize);
    let beta = RatScalar::one() - alpha;
    match arc.arc_type {
        ArcType::Type0 => {
            let n = arc.n as usize;
            let shifted = RatPoly::new(vec![-beta, RatScalar::one()]).pow(n);
            &shifted - &RatPoly::constant(pow(alpha, n))
        }
        ArcType::TypeI => {
            let mut coeffs = vec![RatScalar::zero(); s + 1];
            coeffs[s] = RatScalar::one();
            coeffs[s - q] -= &beta;
            coeffs[0] -= alpha;
            RatPoly::new(coeffs)
        }
        ArcType::TypeII => {
            let z = arc.z.expect("type II carries z") as usize;
            &binomial_power(q, &beta, d) - &RatPoly::monomial(pow(alpha, d), z)
        }
        ArcType::TypeIII => {
            let y = arc.y.expect("type III carries y") as usize;
            &binomial_power(q, &beta, d).shift_up(y) - &RatPoly::constant(pow(alpha, d))
        }
    }
}

/// Builds the reduced Ito polynomial and checks it against the reduction of
/// the full arc polynomial. At α ∈ {0, 1} (and for even-order Type 0 at
/// α = 1/2) the closed form itself has further zero roots, so the check is
/// `closed · t^min(s, qd) = full`, which holds for every α ∈ [0, 1].
pub fn reduced_ito(arc: &ArcParams, alpha: &RatScalar) -> Result<ItoInstance, ItoError> {
    if !in_closed_unit(alpha) {
        return Err(ItoError::AlphaOutOfRange(alpha.to_string()));
    }
    let poly = closed_form(arc, alpha);
    let full = full_arc_poly(arc, alpha);
    if poly.shift_up(arc.extraneous_zero_roots() as usize) != full {
        return Err(ItoError::ClosedFormMismatch {
            arc: arc.to_string(),
        });
    }
    Ok(ItoInstance {
        arc: *arc,
        alpha: alpha.clone(),
        beta: RatScalar::one() - alpha,
        poly,
    })
}

/// `2 d k_{2q} = (d - 1) k_q^2` with `k_j` the coefficient of `t^(deg - j)`.
pub fn coefficient_identity_holds(poly: &RatPoly, q: usize, d: usize) -> bool {
    let kq = poly.k(q);
    let k2q = poly.k(2 * q);
    int(2 * d as i64) * k2q == int(d as i64 - 1) * &kq * &kq
}

pub fn coefficient_identity_check(inst: &ItoInstance) -> bool {
    coefficient_identity_holds(&inst.poly, inst.arc.q as usize, inst.arc.d as usize)
}
