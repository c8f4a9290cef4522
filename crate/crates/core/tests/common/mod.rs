//! Matrices transcribed from the worked examples, plus random generators.
#![allow(dead_code)]

use karpelevic_core::algebra::{rat, RatMatrix, RatScalar, StochMatrix};
use num_traits::{One, Zero};
use rand::Rng;

fn one() -> RatScalar {
    RatScalar::one()
}

fn comp(x: &RatScalar) -> RatScalar {
    RatScalar::one() - x
}

/// Builds a stochastic matrix from 1-based `(row, col, value)` entries.
pub fn sparse(n: usize, entries: &[(usize, usize, RatScalar)]) -> StochMatrix {
    let mut m = RatMatrix::zeros(n);
    for (i, j, w) in entries {
        assert!(m.get(i - 1, j - 1).is_zero(), "duplicate entry ({i}, {j})");
        m.set(i - 1, j - 1, w.clone());
    }
    StochMatrix::new(m).expect("fixture rows sum to one")
}

/// Entries shared by A₁–A₄: the first q-cycle with its connector 1 → 5,
/// and the q-cycle edges of rows 5, 6 and 12.
fn type2_common(a: &RatScalar) -> Vec<(usize, usize, RatScalar)> {
    vec![
        (1, 2, comp(a)),
        (1, 5, a.clone()),
        (2, 3, one()),
        (3, 4, one()),
        (4, 1, one()),
        (5, 6, one()),
        (6, 7, one()),
        (12, 9, one()),
    ]
}

/// x = (0, 3, 3).
pub fn a1(a: &RatScalar) -> StochMatrix {
    let mut e = type2_common(a);
    e.extend([
        (7, 8, one()),
        (8, 5, comp(a)),
        (8, 12, a.clone()),
        (9, 10, one()),
        (10, 11, one()),
        (11, 1, a.clone()),
        (11, 12, comp(a)),
    ]);
    sparse(12, &e)
}

/// x = (2, 2, 2).
pub fn a2(a: &RatScalar) -> StochMatrix {
    let mut e = type2_common(a);
    e.extend([
        (7, 8, comp(a)),
        (7, 11, a.clone()),
        (8, 5, one()),
        (9, 3, a.clone()),
        (9, 10, comp(a)),
        (10, 11, one()),
        (11, 12, one()),
    ]);
    sparse(12, &e)
}

/// x = (1, 2, 3).
pub fn a3(a: &RatScalar) -> StochMatrix {
    let mut e = type2_common(a);
    e.extend([
        (7, 8, comp(a)),
        (7, 11, a.clone()),
        (8, 5, one()),
        (9, 10, one()),
        (10, 4, a.clone()),
        (10, 11, comp(a)),
        (11, 12, one()),
    ]);
    sparse(12, &e)
}

/// x = (1, 3, 2).
pub fn a4(a: &RatScalar) -> StochMatrix {
    let mut e = type2_common(a);
    e.extend([
        (7, 8, one()),
        (8, 5, comp(a)),
        (8, 12, a.clone()),
        (9, 10, one()),
        (10, 4, a.clone()),
        (10, 11, comp(a)),
        (11, 12, one()),
    ]);
    sparse(12, &e)
}

/// A₁ with three extra connectors out of the first q-cycle.
pub fn a11(a: &RatScalar, a1: &RatScalar, a2: &RatScalar, a3: &RatScalar) -> StochMatrix {
    let last = comp(a) / (a1 * a2 * a3);
    sparse(
        12,
        &[
            (1, 2, a1.clone()),
            (1, 5, comp(a1)),
            (2, 3, a2.clone()),
            (2, 6, comp(a2)),
            (3, 4, a3.clone()),
            (3, 7, comp(a3)),
            (4, 1, last.clone()),
            (4, 8, comp(&last)),
            (5, 6, one()),
            (6, 7, one()),
            (7, 8, one()),
            (8, 5, comp(a)),
            (8, 12, a.clone()),
            (9, 10, one()),
            (10, 11, one()),
            (11, 1, a.clone()),
            (11, 12, comp(a)),
            (12, 9, one()),
        ],
    )
}

/// A₁ with three extra connectors out of the last q-cycle.
pub fn a12(a: &RatScalar, a1: &RatScalar, a2: &RatScalar, a3: &RatScalar) -> StochMatrix {
    let last = comp(a) / (a1 * a2 * a3);
    sparse(
        12,
        &[
            (1, 2, comp(a)),
            (1, 5, a.clone()),
            (2, 3, one()),
            (3, 4, one()),
            (4, 1, one()),
            (5, 6, one()),
            (6, 7, one()),
            (7, 8, one()),
            (8, 5, comp(a)),
            (8, 12, a.clone()),
            (9, 3, comp(a1)),
            (9, 10, a1.clone()),
            (10, 4, comp(a2)),
            (10, 11, a2.clone()),
            (11, 1, comp(a3)),
            (11, 12, a3.clone()),
            (12, 2, comp(&last)),
            (12, 9, last.clone()),
        ],
    )
}

/// A₁ with two connectors out of the first q-cycle and three out of the last.
pub fn a13(a: &RatScalar, a1: &RatScalar, b1: &RatScalar, b2: &RatScalar) -> StochMatrix {
    let second = comp(a) / a1;
    let last = comp(a) / (b1 * b2);
    sparse(
        12,
        &[
            (1, 2, a1.clone()),
            (1, 5, comp(a1)),
            (2, 3, second.clone()),
            (2, 6, comp(&second)),
            (3, 4, one()),
            (4, 1, one()),
            (5, 6, one()),
            (6, 7, one()),
            (7, 8, one()),
            (8, 5, comp(a)),
            (8, 12, a.clone()),
            (9, 3, comp(b1)),
            (9, 10, b1.clone()),
            (10, 4, comp(b2)),
            (10, 11, b2.clone()),
            (11, 1, comp(&last)),
            (11, 12, last.clone()),
            (12, 9, one()),
        ],
    )
}

/// `D C_n + (I - D) C_n^(n+1-q)` for a diagonal given by 1-based `(index, value)`
/// overrides of the all-ones diagonal.
pub fn banded(n: usize, q: usize, diag: &[(usize, RatScalar)]) -> StochMatrix {
    let mut d = vec![RatScalar::one(); n];
    for (i, v) in diag {
        d[i - 1] = v.clone();
    }
    let mut e = Vec::new();
    for i in 1..=n {
        e.push((i, i % n + 1, d[i - 1].clone()));
        if !d[i - 1].is_one() {
            e.push((i, (i + n - q) % n + 1, comp(&d[i - 1])));
        }
    }
    sparse(n, &e)
}

/// The first printed Type III family member, n = 15, q = 4.
pub fn d1(a: &RatScalar, a1: &RatScalar, b1: &RatScalar, c1: &RatScalar) -> StochMatrix {
    banded(
        15,
        4,
        &[
            (4, a1.clone()),
            (5, a / a1),
            (9, b1.clone()),
            (10, a / b1),
            (14, c1.clone()),
            (15, a / c1),
        ],
    )
}

/// The second printed Type III family member, n = 15, q = 4.
pub fn d2(a: &RatScalar, a1: &RatScalar, a2: &RatScalar, a3: &RatScalar) -> StochMatrix {
    banded(
        15,
        4,
        &[
            (4, a1.clone()),
            (5, a2.clone()),
            (6, a3.clone()),
            (7, a / (a1 * a2 * a3)),
            (11, a.clone()),
            (15, a.clone()),
        ],
    )
}

/// A random stochastic matrix with small rational entries; each entry is
/// zero with probability `sparsity`.
pub fn random_stochastic<R: Rng>(rng: &mut R, n: usize, sparsity: f64) -> StochMatrix {
    let rows = (0..n)
        .map(|_| {
            let mut raw: Vec<i64> = (0..n)
                .map(|_| if rng.gen_bool(sparsity) { 0 } else { rng.gen_range(1..=12) })
                .collect();
            if raw.iter().all(|&v| v == 0) {
                raw[rng.gen_range(0..n)] = 1;
            }
            let total: i64 = raw.iter().sum();
            raw.iter().map(|&v| rat(v, total)).collect()
        })
        .collect();
    StochMatrix::new(RatMatrix::from_rows(rows).unwrap()).unwrap()
}
