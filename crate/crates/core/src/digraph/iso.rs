use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use super::DigraphError;
use crate::algebra::{RatScalar, StochMatrix};
use crate::DEFAULT_MAX_BRUTE;

/// Largest order accepted by the refinement path.
pub const MAX_REFINED_ORDER: usize = 20;

/// Orders up to `max_brute` search with a trivial initial partition; orders
/// up to `max_refined` refine colours first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimilarityLimits {
    pub max_brute: usize,
    pub max_refined: usize,
}

impl Default for SimilarityLimits {
    fn default() -> Self {
        SimilarityLimits {
            max_brute: DEFAULT_MAX_BRUTE,
            max_refined: MAX_REFINED_ORDER,
        }
    }
}

pub fn is_perm_similar(a: &StochMatrix, b: &StochMatrix) -> Result<bool, DigraphError> {
    Ok(find_perm_similarity(a, b, SimilarityLimits::default())?.is_some())
}

/// Returns `perm` with `a.permute(&perm) == b`, i.e. `b[perm[i]][perm[j]] = a[i][j]`.
pub fn find_perm_similarity(
    a: &StochMatrix,
    b: &StochMatrix,
    limits: SimilarityLimits,
) -> Result<Option<Vec<usize>>, DigraphError> {
    let n = a.order();
    if b.order() != n {
        return Err(DigraphError::OrderMismatch(n, b.order()));
    }
    let bound = limits.max_brute.max(limits.max_refined);
    if n > bound {
        return Err(DigraphError::SizeBound {
            n,
            bound,
            what: "permutation similarity",
        });
    }
    let (wa, wb) = weight_ids(a, b);
    let colours = if n <= limits.max_brute {
        vec![0; 2 * n]
    } else {
        refine(&wa, &wb)
    };
    let (ca, cb) = colours.split_at(n);
    let mut hist_a: BTreeMap<usize, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in ca {
        *hist_a.entry(c).or_default() += 1;
    }
    for &c in cb {
        *hist_b.entry(c).or_default() += 1;
    }
    if hist_a != hist_b {
        return Ok(None);
    }
    let order = search_order(&wa, ca, &hist_a);
    let mut search = Search {
        wa: &wa,
        wb: &wb,
        ca,
        cb,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(search.run(0).then(|| search.map.clone()))
}

/// Dense matrices of small weight ids, shared between both inputs; 0 = no edge.
fn weight_ids(a: &StochMatrix, b: &StochMatrix) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut ids: BTreeMap<&RatScalar, u32> = BTreeMap::new();
    for m in [a, b] {
        for v in m.matrix().rows().iter().flatten() {
            if !v.is_zero() {
                let next = ids.len() as u32 + 1;
                ids.entry(v).or_insert(next);
            }
        }
    }
    let dense = |m: &StochMatrix| -> Vec<Vec<u32>> {
        m.matrix()
            .rows()
            .iter()
            .map(|row| row.iter().map(|v| ids.get(v).copied().unwrap_or(0)).collect())
            .collect()
    };
    (dense(a), dense(b))
}

/// Joint colour refinement on the disjoint union of both digraphs.
fn refine(wa: &[Vec<u32>], wb: &[Vec<u32>]) -> Vec<usize> {
    let n = wa.len();
    let w = |v: usize, u: usize| -> u32 {
        match (v < n, u < n) {
            (true, true) => wa[v][u],
            (false, false) => wb[v - n][u - n],
            _ => 0,
        }
    };
    let block = |v: usize| if v < n { 0..n } else { n..2 * n };
    let mut colour: Vec<usize> = (0..2 * n).map(|v| w(v, v) as usize).collect();
    let mut classes = usize::MAX;
    loop {
        let mut sigs = Vec::with_capacity(2 * n);
        for v in 0..2 * n {
            let mut out: Vec<(u32, usize)> = block(v)
                .filter(|&u| u != v && w(v, u) != 0)
                .map(|u| (w(v, u), colour[u]))
                .collect();
            let mut inc: Vec<(u32, usize)> = block(v)
                .filter(|&u| u != v && w(u, v) != 0)
                .map(|u| (w(u, v), colour[u]))
                .collect();
            out.sort_unstable();
            inc.sort_unstable();
            sigs.push((colour[v], out, inc));
        }
        let mut ids: BTreeMap<&(usize, Vec<(u32, usize)>, Vec<(u32, usize)>), usize> = BTreeMap::new();
        for s in &sigs {
            let next = ids.len();
            ids.entry(s).or_insert(next);
        }
        let next: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();
        let count = ids.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

/// Rarest colour first, then breadth-first over the underlying undirected
/// graph so each new vertex is constrained by already-mapped neighbours.
fn search_order(wa: &[Vec<u32>], ca: &[usize], hist: &BTreeMap<usize, usize>) -> Vec<usize> {
    let n = wa.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (hist[&ca[v]], v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = (0..n)
                .filter(|&u| !seen[u] && (wa[v][u] != 0 || wa[u][v] != 0))
                .collect();
            next.sort_by_key(|&u| (hist[&ca[u]], u));
            for u in next {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    order
}

struct Search<'a> {
    wa: &'a [Vec<u32>],
    wb: &'a [Vec<u32>],
    ca: &'a [usize],
    cb: &'a [usize],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.wb.len() {
            if self.used[w] || self.ca[v] != self.cb[w] || !self.consistent(depth, v, w) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, v: usize, w: usize) -> bool {
        if self.wa[v][v] != self.wb[w][w] {
            return false;
        }
        self.order[..depth].iter().all(|&u| {
            let x = self.map[u];
            self.wa[v][u] == self.wb[w][x] && self.wa[u][v] == self.wb[x][w]
        })
    }
}
