use std::collections::BTreeMap;

use num_traits::One;

use super::{DigraphError, WeightedDigraph};
use crate::algebra::RatScalar;

/// Simple cycle, listed from its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub weight: RatScalar,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `(v_k, v_{k+1})` in traversal order, closing back to the start.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    fn mask(&self) -> u128 {
        self.vertices.iter().fold(0u128, |m, &v| m | (1u128 << v))
    }

    pub fn is_disjoint_from(&self, other: &Cycle) -> bool {
        self.vertices.iter().all(|v| !other.vertices.contains(v))
    }
}

/// All simple cycles of a digraph grouped by length, each length's list in
/// lexicographic vertex order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleReport {
    pub by_length: BTreeMap<usize, Vec<Cycle>>,
}

impl CycleReport {
    pub fn count(&self, len: usize) -> usize {
        self.by_length.get(&len).map_or(0, Vec::len)
    }

    pub fn total(&self) -> usize {
        self.by_length.values().map(Vec::len).sum()
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_length.keys().copied()
    }

    pub fn of_length(&self, len: usize) -> &[Cycle] {
        self.by_length.get(&len).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cycle> {
        self.by_length.values().flatten()
    }

    /// `length -> count`, the shape used in printed summaries.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        self.by_length.iter().map(|(k, v)| (*k, v.len())).collect()
    }
}

/// Backtracking enumeration rooted at each vertex `s`, visiting only
/// vertices `> s` that can still reach `s`. Every cycle is found exactly once,
/// from its minimum vertex.
pub fn simple_cycles(g: &WeightedDigraph) -> CycleReport {
    let n = g.order();
    let mut report = CycleReport::default();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for s in 0..n {
        let reach = reaches_root(g, s);
        path.clear();
        path.push(s);
        on_path[s] = true;
        extend(g, s, s, &reach, &mut on_path, &mut path, &mut report);
        on_path[s] = false;
    }
    for cycles in report.by_length.values_mut() {
        cycles.sort();
    }
    report
}

/// Vertices `>= s` with a path back to `s` inside the subgraph on `s..n`.
fn reaches_root(g: &WeightedDigraph, s: usize) -> Vec<bool> {
    let n = g.order();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j, _) in g.edges() {
        if i >= s && j >= s {
            preds[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &u in &preds[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

fn extend(
    g: &WeightedDigraph,
    root: usize,
    v: usize,
    reach: &[bool],
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    report: &mut CycleReport,
) {
    for (w, _) in g.out_edges(v) {
        let w = *w;
        if w == root {
            let weight = path_weight(g, path);
            report.by_length.entry(path.len()).or_default().push(Cycle {
                vertices: path.clone(),
                weight,
            });
        } else if w > root && reach[w] && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend(g, root, w, reach, on_path, path, report);
            path.pop();
            on_path[w] = false;
        }
    }
}

fn path_weight(g: &WeightedDigraph, cycle: &[usize]) -> RatScalar {
    let n = cycle.len();
    (0..n).fold(RatScalar::one(), |acc, k| {
        acc * g
            .weight(cycle[k], cycle[(k + 1) % n])
            .expect("cycle edges exist")
    })
}

/// A set of pairwise vertex-disjoint cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearDigraph {
    pub cycles: Vec<Cycle>,
    pub vertex_count: usize,
    pub cycle_count: usize,
    pub weight_product: RatScalar,
}

/// Visits every nonempty linear digraph exactly once as
/// `(vertex_count, cycle_count, weight_product)`.
pub(crate) fn for_each_linear<F>(report: &CycleReport, n: usize, mut f: F) -> Result<(), DigraphError>
where
    F: FnMut(&[&Cycle], usize, &RatScalar),
{
    if n > 128 {
        return Err(DigraphError::SizeBound {
            n,
            bound: 128,
            what: "linear digraph enumeration",
        });
    }
    let cycles: Vec<&Cycle> = report.iter().collect();
    let masks: Vec<u128> = cycles.iter().map(|c| c.mask()).collect();
    let mut chosen: Vec<&Cycle> = Vec::new();
    fn go<'a, F>(
        start: usize,
        used: u128,
        verts: usize,
        weight: &RatScalar,
        cycles: &[&'a Cycle],
        masks: &[u128],
        chosen: &mut Vec<&'a Cycle>,
        f: &mut F,
    ) where
        F: FnMut(&[&Cycle], usize, &RatScalar),
    {
        for k in start..cycles.len() {
            if masks[k] & used != 0 {
                continue;
            }
            let w = weight * &cycles[k].weight;
            chosen.push(cycles[k]);
            let vc = verts + cycles[k].len();
            f(chosen, vc, &w);
            go(k + 1, used | masks[k], vc, &w, cycles, masks, chosen, f);
            chosen.pop();
        }
    }
    go(0, 0, 0, &RatScalar::one(), &cycles, &masks, &mut chosen, &mut f);
    Ok(())
}

/// Materialises every nonempty linear digraph. Exponential; meant for small
/// or sparse graphs.
pub fn linear_digraphs(g: &WeightedDigraph) -> Result<Vec<LinearDigraph>, DigraphError> {
    let report = simple_cycles(g);
    let mut out = Vec::new();
    for_each_linear(&report, g.order(), |cycles, vc, w| {
        out.push(LinearDigraph {
            cycles: cycles.iter().map(|c| (*c).clone()).collect(),
            vertex_count: vc,
            cycle_count: cycles.len(),
            weight_product: w.clone(),
        });
    })?;
    Ok(out)
}
