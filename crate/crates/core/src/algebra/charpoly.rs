//! Exact characteristic polynomials.
//!
//! Reduction to upper Hessenberg form by rational similarity transforms,
//! followed by the standard three-term-free Hessenberg determinant
//! recurrence. O(n^3) field operations, and zero entries are skipped, which
//! keeps the sparse realization matrices cheap even at n = 60.

use num_traits::{One, Zero};

use super::matrix::{RatMatrix, StochMatrix};
use super::poly::RatPoly;
use super::rational::RatScalar;

/// Monic `det(t I - M)` of a stochastic matrix.
pub fn charpoly_exact(m: &StochMatrix) -> RatPoly {
    charpoly_of(m.matrix())
}

/// Monic `det(t I - M)` of any square rational matrix.
pub fn charpoly_of(m: &RatMatrix) -> RatPoly {
    let n = m.order();
    let h = hessenberg(m);
    let mut p: Vec<RatPoly> = Vec::with_capacity(n + 1);
    p.push(RatPoly::one());
    for col in 0..n {
        let linear = RatPoly::new(vec![-h[col][col].clone(), RatScalar::one()]);
        let mut next = &linear * &p[col];
        let mut prod = RatScalar::one();
        for i in (1..=col).rev() {
            prod *= &h[i][i - 1];
            if prod.is_zero() {
                break;
            }
            let c = &h[i - 1][col];
            if !c.is_zero() {
                next = &next - &p[i - 1].scale(&(c * &prod));
            }
        }
        p.push(next);
    }
    p.pop().expect("p_0 is always present")
}

fn hessenberg(m: &RatMatrix) -> Vec<Vec<RatScalar>> {
    let n = m.order();
    let mut h: Vec<Vec<RatScalar>> = m.rows().to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let pivot = h[j + 1][j].clone();
        for k in j + 2..n {
            if h[k][j].is_zero() {
                continue;
            }
            let u = &h[k][j] / &pivot;
            // row_k -= u * row_{j+1}
            let (upper, lower) = h.split_at_mut(k);
            let src = &upper[j + 1];
            for (dst, s) in lower[0].iter_mut().zip(src) {
                if !s.is_zero() {
                    *dst -= &u * s;
                }
            }
            // col_{j+1} += u * col_k
            for row in h.iter_mut() {
                if !row[k].is_zero() {
                    let add = &u * &row[k];
                    row[j + 1] += add;
                }
            }
        }
    }
    h
}
