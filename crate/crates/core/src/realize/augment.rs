use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::construct::type2_connectors;
use super::{check_open_alpha, Composition, RealizeError};
use crate::algebra::{display_rat, RatMatrix, RatScalar, StochMatrix};
use crate::digraph::{simple_cycles, WeightedDigraph};

/// A Type II realization with its q-cycles on consecutive rows and one or
/// more connectors from each q-cycle into the next.
///
/// In a block with a single connector row the weights are those of the
/// sparsest realization. In a block with connector rows `r_1 < … < r_m`
/// (`m ≥ 2`) the cycle edge of `r_k` carries the free parameter
/// `alpha{r_k + 1}` for `k < m`, the connector carries its complement, and
/// the cycle edge of `r_m` is fixed by the q-cycle weight `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedTypeII {
    q: usize,
    d: usize,
    z: usize,
    alpha: RatScalar,
    /// Connector rows of each block.
    rows: Vec<BTreeSet<usize>>,
}

impl AugmentedTypeII {
    pub fn from_sparsest(
        q: usize,
        d: usize,
        z: usize,
        alpha: &RatScalar,
        x: &Composition,
    ) -> Result<Self, RealizeError> {
        check_open_alpha(alpha)?;
        let mut rows = vec![BTreeSet::new(); d];
        for (a, _) in type2_connectors(q, d, z, x)? {
            rows[a / q].insert(a);
        }
        Ok(AugmentedTypeII {
            q,
            d,
            z,
            alpha: alpha.clone(),
            rows,
        })
    }

    pub fn order(&self) -> usize {
        self.q * self.d
    }

    pub fn alpha(&self) -> &RatScalar {
        &self.alpha
    }

    /// Head of the connector leaving `row`: the same offset in the next
    /// block, or `(z + d + i) mod q` from the last block into the first.
    pub fn connector_target(&self, row: usize) -> usize {
        let (t, i) = (row / self.q, row % self.q);
        if t + 1 < self.d {
            (t + 1) * self.q + i
        } else {
            (self.z + self.d + i) % self.q
        }
    }

    fn cycle_successor(&self, row: usize) -> usize {
        (row / self.q) * self.q + (row % self.q + 1) % self.q
    }

    pub fn connectors(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .flatten()
            .map(|&r| (r, self.connector_target(r)))
            .collect()
    }

    /// Connector count per block.
    pub fn connector_counts(&self) -> Vec<usize> {
        self.rows.iter().map(BTreeSet::len).collect()
    }

    /// Support with unit weights; only the cycle structure matters.
    pub fn support(&self) -> WeightedDigraph {
        let n = self.order();
        let mut g = WeightedDigraph::empty(n);
        for r in 0..n {
            g.add_edge(r, self.cycle_successor(r), RatScalar::one())
                .expect("cycle edges are distinct");
        }
        for (a, b) in self.connectors() {
            g.add_edge(a, b, RatScalar::one()).expect("connectors are distinct");
        }
        g
    }

    /// Names of the free parameters, in row order.
    pub fn free_params(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|rows| rows.len() >= 2)
            .flat_map(|rows| rows.iter().take(rows.len() - 1))
            .map(|r| param_name(*r))
            .collect()
    }

    /// The matrix at the given parameter values. Every parameter must lie in
    /// `(0, 1]` and the dependent entries must land in `[0, 1]`.
    pub fn instantiate(&self, params: &BTreeMap<String, RatScalar>) -> Result<StochMatrix, RealizeError> {
        let names: BTreeSet<String> = self.free_params().into_iter().collect();
        if let Some(extra) = params.keys().find(|k| !names.contains(*k)) {
            return Err(RealizeError::UnknownParameter(extra.clone()));
        }
        let beta = RatScalar::one() - &self.alpha;
        let n = self.order();
        let mut m = RatMatrix::zeros(n);
        for r in 0..n {
            m.set(r, self.cycle_successor(r), RatScalar::one());
        }
        for rows in &self.rows {
            let last = *rows.iter().next_back().expect("every block has a connector");
            let mut product = RatScalar::one();
            for &r in rows.iter().take(rows.len() - 1) {
                let name = param_name(r);
                let v = params
                    .get(&name)
                    .ok_or_else(|| RealizeError::MissingParameter(name.clone()))?;
                if !v.is_positive() || v > &RatScalar::one() {
                    return Err(RealizeError::Infeasible(format!(
                        "{name} = {} must lie in (0, 1]",
                        display_rat(v)
                    )));
                }
                self.set_row(&mut m, r, v.clone());
                product *= v;
            }
            let dependent = if rows.len() == 1 {
                beta.clone()
            } else {
                &beta / &product
            };
            if dependent > RatScalar::one() {
                return Err(RealizeError::Infeasible(format!(
                    "cycle weight at row {} would be {} > 1",
                    last + 1,
                    display_rat(&dependent)
                )));
            }
            self.set_row(&mut m, last, dependent);
        }
        StochMatrix::new(m).map_err(|e| RealizeError::Infeasible(e.to_string()))
    }

    fn set_row(&self, m: &mut RatMatrix, r: usize, cycle_weight: RatScalar) {
        let rest = RatScalar::one() - &cycle_weight;
        m.set(r, self.cycle_successor(r), cycle_weight);
        if !rest.is_zero() {
            m.set(r, self.connector_target(r), rest);
        }
    }
}

fn param_name(row: usize) -> String {
    format!("alpha{}", row + 1)
}

/// Adds the connector `(tail, head)` if every cycle through a connector
/// still has length `n - z`.
pub fn type2_augment(
    base: &AugmentedTypeII,
    edge: (usize, usize),
) -> Result<AugmentedTypeII, RealizeError> {
    let (tail, head) = edge;
    if tail >= base.order() || base.connector_target(tail) != head {
        return Err(RealizeError::NotAConnector(tail, head));
    }
    let block = tail / base.q;
    if base.rows[block].contains(&tail) {
        return Err(RealizeError::DuplicateConnector(tail, head));
    }
    let mut next = base.clone();
    next.rows[block].insert(tail);
    let allowed = base.order() - base.z;
    let report = simple_cycles(&next.support());
    let mut bad = BTreeSet::new();
    for c in report.iter() {
        let len = c.len();
        let in_one_block = c.vertices.iter().all(|v| v / base.q == c.vertices[0] / base.q);
        if !(len == base.q && in_one_block) && len != allowed {
            bad.insert(len);
        }
    }
    if !bad.is_empty() {
        return Err(RealizeError::EdgeRejected {
            tail,
            head,
            lengths: bad.into_iter().collect(),
            allowed,
        });
    }
    Ok(next)
}
