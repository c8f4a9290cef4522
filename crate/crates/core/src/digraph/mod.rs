//! Weighted digraphs of nonnegative matrices.
//!
//! Vertex `i` of the digraph is row/column `i` of the matrix and an edge
//! `(i, j)` carries the entry `a_ij`, present only when nonzero. The cycle
//! structure of this digraph determines the characteristic polynomial
//! through the Coates expansion, which gives the crate a second route to
//! `det(tI - A)` that shares nothing with elimination.

mod coates;
mod cycles;
mod iso;
mod structure;

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{display_rat, RatMatrix, RatScalar, StochMatrix};

pub use coates::{charpoly_coates, charpoly_coates_bounded, DEFAULT_COATES_BOUND};
pub use cycles::{linear_digraphs, simple_cycles, Cycle, CycleReport, LinearDigraph};
pub use iso::{find_perm_similarity, is_perm_similar, SimilarityLimits, MAX_REFINED_ORDER};
pub use structure::{cycle_structure_check, CycleStructureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("edge ({0}, {1}) has a non-positive weight")]
    NonPositiveWeight(usize, usize),
    #[error("edge ({0}, {1}) given twice")]
    DuplicateEdge(usize, usize),
    #[error("edge ({tail}, {head}) leaves the vertex range 0..{n}")]
    VertexOutOfRange { tail: usize, head: usize, n: usize },
    #[error("order {n} exceeds the bound {bound} for {what}")]
    SizeBound { n: usize, bound: usize, what: &'static str },
    #[error("matrices have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
}

/// Digraph on vertices `0..n` with positive rational edge weights and at
/// most one edge per ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    out: Vec<Vec<(usize, RatScalar)>>,
}

impl WeightedDigraph {
    pub fn empty(n: usize) -> Self {
        WeightedDigraph {
            n,
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (usize, usize, RatScalar)>,
    {
        let mut g = Self::empty(n);
        for (tail, head, w) in edges {
            g.add_edge(tail, head, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, tail: usize, head: usize, w: RatScalar) -> Result<(), DigraphError> {
        if tail >= self.n || head >= self.n {
            return Err(DigraphError::VertexOutOfRange {
                tail,
                head,
                n: self.n,
            });
        }
        if !w.is_positive() {
            return Err(DigraphError::NonPositiveWeight(tail, head));
        }
        let row = &mut self.out[tail];
        match row.binary_search_by_key(&head, |(h, _)| *h) {
            Ok(_) => Err(DigraphError::DuplicateEdge(tail, head)),
            Err(pos) => {
                row.insert(pos, (head, w));
                Ok(())
            }
        }
    }

    /// Zero entries become absent edges. Negative entries are rejected.
    pub fn from_matrix(m: &RatMatrix) -> Result<Self, DigraphError> {
        let n = m.order();
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j);
                if v.is_negative() {
                    return Err(DigraphError::NonPositiveWeight(i, j));
                }
                if !v.is_zero() {
                    g.out[i].push((j, v.clone()));
                }
            }
        }
        Ok(g)
    }

    pub fn from_stochastic(m: &StochMatrix) -> Self {
        Self::from_matrix(m.matrix()).expect("stochastic entries are nonnegative")
    }

    pub fn to_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.n);
        for (i, row) in self.out.iter().enumerate() {
            for (j, w) in row {
                m.set(i, *j, w.clone());
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn out_edges(&self, v: usize) -> &[(usize, RatScalar)] {
        &self.out[v]
    }

    pub fn weight(&self, tail: usize, head: usize) -> Option<&RatScalar> {
        let row = &self.out[tail];
        row.binary_search_by_key(&head, |(h, _)| *h)
            .ok()
            .map(|i| &row[i].1)
    }

    pub fn has_edge(&self, tail: usize, head: usize) -> bool {
        self.weight(tail, head).is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &RatScalar)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, w)| (i, *j, w)))
    }

    pub fn out_weight_sum(&self, v: usize) -> RatScalar {
        self.out[v].iter().map(|(_, w)| w).sum()
    }

    /// Graphviz source. Vertices are printed 1-based.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {name} {{");
        for v in 0..self.n {
            let _ = writeln!(s, "  {};", v + 1);
        }
        for (i, j, w) in self.edges() {
            let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", i + 1, j + 1, display_rat(w));
        }
        s.push_str("}\n");
        s
    }
}

/// `min((i - j) mod n, (j - i) mod n)`.
pub fn cyclic_distance(n: usize, i: usize, j: usize) -> usize {
    let a = (i + n - j % n) % n;
    let b = (j + n - i % n) % n;
    a.min(b)
}
