use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;

use super::construct::TypeIIIFamilySpec;
use super::{verify_realization, RealizeError};
use crate::algebra::{RatScalar, StochMatrix};
use crate::digraph::{cyclic_distance, WeightedDigraph};
use crate::farey::{ArcParams, ArcType};

pub const DEFAULT_PROBE_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// `m.permute(&perm)` is the family matrix of `spec`.
    Found { perm: Vec<usize>, spec: TypeIIIFamilySpec },
    /// Every Hamiltonian cycle was tried.
    NotFound { hamiltonian_cycles: usize },
    Inconclusive { nodes: usize },
}

impl fmt::Display for ProbeOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeOutcome::Found { spec, .. } => {
                let blocks: Vec<String> = spec
                    .blocks
                    .iter()
                    .map(|b| {
                        let rows: Vec<String> = b.iter().map(|r| (r + 1).to_string()).collect();
                        format!("{{{}}}", rows.join(","))
                    })
                    .collect();
                write!(f, "FOUND (blocks {})", blocks.join(" "))
            }
            ProbeOutcome::NotFound { hamiltonian_cycles } => {
                write!(f, "NOT-FOUND (exhausted {hamiltonian_cycles} Hamiltonian cycles)")
            }
            ProbeOutcome::Inconclusive { nodes } => {
                write!(f, "INCONCLUSIVE (search budget of {nodes} nodes exhausted)")
            }
        }
    }
}

pub fn conjecture_probe(
    m: &StochMatrix,
    arc: &ArcParams,
    alpha: &RatScalar,
) -> Result<ProbeOutcome, RealizeError> {
    conjecture_probe_with_budget(m, arc, alpha, DEFAULT_PROBE_BUDGET)
}

/// Looks for a relabeling of a verified Type III realization into the
/// block family: every such relabeling turns a Hamiltonian cycle into
/// `0 -> 1 -> … -> n-1 -> 0`, so the search walks Hamiltonian cycles from
/// vertex 0 and tests each induced labeling.
pub fn conjecture_probe_with_budget(
    m: &StochMatrix,
    arc: &ArcParams,
    alpha: &RatScalar,
    budget: usize,
) -> Result<ProbeOutcome, RealizeError> {
    if arc.arc_type != ArcType::TypeIII {
        return Err(RealizeError::Precondition(format!("{arc} is not a Type III arc")));
    }
    let report = verify_realization(m, arc, alpha)?;
    if !report.holds() {
        return Err(RealizeError::Precondition(format!(
            "matrix does not realize the arc polynomial: {report}"
        )));
    }
    let g = WeightedDigraph::from_stochastic(m);
    let n = g.order();
    let mut walk = HamWalk {
        g: &g,
        arc,
        alpha,
        path: vec![0],
        on_path: vec![false; n],
        nodes: 0,
        budget,
        cycles: 0,
        found: None,
    };
    walk.on_path[0] = true;
    walk.extend();
    Ok(match walk.found {
        Some((perm, spec)) => ProbeOutcome::Found { perm, spec },
        None if walk.nodes > budget => ProbeOutcome::Inconclusive { nodes: budget },
        None => ProbeOutcome::NotFound {
            hamiltonian_cycles: walk.cycles,
        },
    })
}

struct HamWalk<'a> {
    g: &'a WeightedDigraph,
    arc: &'a ArcParams,
    alpha: &'a RatScalar,
    path: Vec<usize>,
    on_path: Vec<bool>,
    nodes: usize,
    budget: usize,
    cycles: usize,
    found: Option<(Vec<usize>, TypeIIIFamilySpec)>,
}

impl HamWalk<'_> {
    /// Returns true to stop the search.
    fn extend(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return true;
        }
        let n = self.g.order();
        let v = *self.path.last().expect("path starts at 0");
        if self.path.len() == n {
            if self.g.has_edge(v, 0) {
                self.cycles += 1;
                if let Some(hit) = family_form(self.g, self.arc, self.alpha, &self.path) {
                    self.found = Some(hit);
                    return true;
                }
            }
            return false;
        }
        let heads: Vec<usize> = self.g.out_edges(v).iter().map(|(h, _)| *h).collect();
        for h in heads {
            if self.on_path[h] {
                continue;
            }
            self.on_path[h] = true;
            self.path.push(h);
            let stop = self.extend();
            self.path.pop();
            self.on_path[h] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// The family data induced by labeling `cycle[k]` as `k`, if it fits.
fn family_form(
    g: &WeightedDigraph,
    arc: &ArcParams,
    alpha: &RatScalar,
    cycle: &[usize],
) -> Option<(Vec<usize>, TypeIIIFamilySpec)> {
    let n = cycle.len();
    let q = arc.q as usize;
    let mut perm = vec![0; n];
    for (k, &v) in cycle.iter().enumerate() {
        perm[v] = k;
    }
    let mut weights = BTreeMap::new();
    for (i, j, w) in g.edges() {
        let (li, lj) = (perm[i], perm[j]);
        if lj == (li + 1) % n {
            if !w.is_one() {
                weights.insert(li, w.clone());
            }
        } else if lj != (li + n + 1 - q) % n {
            return None;
        }
    }
    // block rows cluster by distance < q; the clusters must be cliques
    let rows: Vec<usize> = weights.keys().copied().collect();
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    let mut assigned = vec![usize::MAX; rows.len()];
    for a in 0..rows.len() {
        if assigned[a] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = BTreeSet::from([rows[a]]);
        assigned[a] = id;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for b in 0..rows.len() {
                if assigned[b] == usize::MAX && cyclic_distance(n, rows[x], rows[b]) < q {
                    assigned[b] = id;
                    block.insert(rows[b]);
                    stack.push(b);
                }
            }
        }
        blocks.push(block);
    }
    let spec = TypeIIIFamilySpec {
        n,
        q,
        d: arc.d as usize,
        y: arc.y.unwrap_or(0) as usize,
        alpha: alpha.clone(),
        blocks,
        weights,
    };
    spec.validate().ok().map(|_| (perm, spec))
}
