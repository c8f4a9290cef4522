use std::fmt;

use super::RealizeError;
use crate::algebra::{charpoly_exact, RatPoly, RatScalar, StochMatrix};
use crate::digraph::{cycle_structure_check, CycleStructureReport, WeightedDigraph};
use crate::farey::ArcParams;
use crate::itopoly::reduced_ito;

/// Exact comparison of a matrix's characteristic polynomial with the reduced
/// Ito polynomial of an arc, plus the cycle-structure verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub expected: RatPoly,
    pub actual: RatPoly,
    pub structure: CycleStructureReport,
}

impl VerificationReport {
    pub fn charpoly_matches(&self) -> bool {
        self.expected == self.actual
    }

    pub fn holds(&self) -> bool {
        self.charpoly_matches()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.charpoly_matches() {
            write!(f, "OK (charpoly exact match; ")?;
        } else {
            write!(
                f,
                "MISMATCH (expected {}, got {}; ",
                self.expected, self.actual
            )?;
        }
        let verdict = if self.structure.holds() { "" } else { "VIOLATED " };
        write!(f, "cycle structure: {verdict}{})", self.structure)
    }
}

pub fn verify_realization(
    m: &StochMatrix,
    arc: &ArcParams,
    alpha: &RatScalar,
) -> Result<VerificationReport, RealizeError> {
    let expected_order = arc.reduced_degree() as usize;
    if m.order() != expected_order {
        return Err(RealizeError::OrderMismatch {
            expected: expected_order,
            found: m.order(),
        });
    }
    let expected = reduced_ito(arc, alpha)?.poly;
    let actual = charpoly_exact(m);
    let structure = cycle_structure_check(&WeightedDigraph::from_stochastic(m), arc);
    Ok(VerificationReport {
        expected,
        actual,
        structure,
    })
}

const DD_SEARCH_BUDGET: usize = 10_000_000;

/// A relabeling `perm` under which every nonzero entry `(i, j)` of
/// `m.permute(&perm)` has `j - i ≡ k` or `k + 1 (mod n)`, if one exists.
pub fn dd_support_check(m: &StochMatrix, k: usize) -> Result<Option<Vec<usize>>, RealizeError> {
    let n = m.order();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let g = WeightedDigraph::from_stochastic(m);
    let offsets = [k % n, (k + 1) % n];
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j, _) in g.edges() {
        if i != j {
            nbrs[i].push(j);
            nbrs[j].push(i);
        } else if !offsets.contains(&0) {
            return Ok(None);
        }
    }
    // breadth-first so that every vertex after a component root has a placed neighbour
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in &nbrs[v] {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
    }
    let mut search = DdSearch {
        g: &g,
        n,
        offsets,
        order: &order,
        label: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
    };
    if search.run(0)? {
        Ok(Some(search.label))
    } else {
        Ok(None)
    }
}

struct DdSearch<'a> {
    g: &'a WeightedDigraph,
    n: usize,
    offsets: [usize; 2],
    order: &'a [usize],
    label: Vec<usize>,
    used: Vec<bool>,
    nodes: usize,
}

impl DdSearch<'_> {
    fn run(&mut self, depth: usize) -> Result<bool, RealizeError> {
        if depth == self.n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > DD_SEARCH_BUDGET {
            return Err(RealizeError::SearchBudget(DD_SEARCH_BUDGET));
        }
        let v = self.order[depth];
        for value in self.candidates(v, depth) {
            if self.used[value] || !self.consistent(v, value) {
                continue;
            }
            self.label[v] = value;
            self.used[value] = true;
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.used[value] = false;
            self.label[v] = usize::MAX;
        }
        Ok(false)
    }

    fn candidates(&self, v: usize, depth: usize) -> Vec<usize> {
        let n = self.n;
        for u in 0..n {
            if self.label[u] == usize::MAX {
                continue;
            }
            let lu = self.label[u];
            if self.g.has_edge(u, v) {
                return self.offsets.iter().map(|o| (lu + o) % n).collect();
            }
            if self.g.has_edge(v, u) {
                return self.offsets.iter().map(|o| (lu + n - o) % n).collect();
            }
        }
        // labels are translation invariant, so the very first root can be pinned
        if depth == 0 {
            vec![0]
        } else {
            (0..n).collect()
        }
    }

    fn consistent(&self, v: usize, value: usize) -> bool {
        let n = self.n;
        let ok = |from: usize, to: usize| self.offsets.contains(&((to + n - from) % n));
        if self.g.has_edge(v, v) && !ok(value, value) {
            return false;
        }
        (0..n).all(|u| {
            let lu = self.label[u];
            lu == usize::MAX
                || (!self.g.has_edge(u, v) || ok(lu, value)) && (!self.g.has_edge(v, u) || ok(value, lu))
        })
    }
}
