use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rat, parse_rat, RatScalar};
use super::AlgebraError;

/// Dense square matrix of exact rationals, no further constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    rows: Vec<Vec<RatScalar>>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            rows: vec![vec![RatScalar::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = RatScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatScalar>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(AlgebraError::NotSquare {
                row: i,
                len: row.len(),
                n,
            });
        }
        Ok(RatMatrix { n, rows })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatScalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RatScalar) {
        self.rows[i][j] = value;
    }

    pub fn rows(&self) -> &[Vec<RatScalar>] {
        &self.rows
    }

    pub fn row_sum(&self, i: usize) -> RatScalar {
        self.rows[i].iter().sum()
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().flatten().filter(|v| !v.is_zero()).count()
    }

    /// `(col, value)` for every nonzero entry of row `i`.
    pub fn row_support(&self, i: usize) -> impl Iterator<Item = (usize, &RatScalar)> {
        self.rows[i]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
    }

    pub fn scale(&self, c: &RatScalar) -> Self {
        RatMatrix {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> Self {
        assert_eq!(self.n, other.n, "order mismatch");
        RatMatrix {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Self {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for (k, a) in self.row_support(i) {
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    /// `P M P^T` where `P` sends basis vector `i` to `perm[i]`: entry
    /// `(i, j)` of `self` lands at `(perm[i], perm[j])`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.rows[perm[i]][perm[j]] = self.rows[i][j].clone();
            }
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            entries: self
                .rows
                .iter()
                .map(|r| r.iter().map(format_rat).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, AlgebraError> {
        let rows = json
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != json.n {
            return Err(AlgebraError::NotSquare {
                row: rows.len(),
                len: rows.len(),
                n: json.n,
            });
        }
        Self::from_rows(rows)
    }
}

/// Wire form shared by every matrix-producing command:
/// `{"n": 3, "entries": [["1/2", "1/2", "0/1"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

/// Row-stochastic matrix: entries in `[0, 1]`, each row summing to exactly 1.
/// The invariant is checked once, at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StochMatrix(RatMatrix);

impl StochMatrix {
    pub fn new(m: RatMatrix) -> Result<Self, AlgebraError> {
        if m.order() == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        for i in 0..m.order() {
            for j in 0..m.order() {
                let v = m.get(i, j);
                if v < &RatScalar::zero() || v > &RatScalar::one() {
                    return Err(AlgebraError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: format_rat(v),
                    });
                }
            }
            let sum = m.row_sum(i);
            if !sum.is_one() {
                return Err(AlgebraError::RowSum {
                    row: i,
                    sum: format_rat(&sum),
                });
            }
        }
        Ok(StochMatrix(m))
    }

    pub fn from_rows(rows: Vec<Vec<RatScalar>>) -> Result<Self, AlgebraError> {
        Self::new(RatMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        StochMatrix(RatMatrix::identity(n))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatScalar {
        self.0.get(i, j)
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        StochMatrix(self.0.permute(perm))
    }

    pub fn to_json(&self) -> MatrixJson {
        self.0.to_json()
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self, AlgebraError> {
        Self::new(RatMatrix::from_json(json)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("matrix json is always serialisable")
    }

    pub fn from_json_str(text: &str) -> Result<Self, AlgebraError> {
        let json: MatrixJson =
            serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// `C_n^power`, with `C_n` sending index `i` to `(i + 1) mod n`: the result has
/// a one at `(i, (i + power) mod n)` for every row. Negative powers are fine.
pub fn cyclic_shift_matrix(n: usize, power: i64) -> Result<StochMatrix, AlgebraError> {
    if n < 1 {
        return Err(AlgebraError::EmptyMatrix);
    }
    let mut m = RatMatrix::zeros(n);
    let shift = power.rem_euclid(n as i64) as usize;
    for i in 0..n {
        m.set(i, (i + shift) % n, RatScalar::one());
    }
    Ok(StochMatrix(m))
}
