use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::cycles::simple_cycles;
use super::WeightedDigraph;
use crate::algebra::display_rat;
use crate::farey::ArcParams;

/// Outcome of comparing a digraph's cycle lengths with those an arc allows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleStructureReport {
    /// Histogram `length -> number of simple cycles`.
    pub lengths: BTreeMap<usize, usize>,
    /// Lengths outside `{s} ∪ {kq : 1 ≤ k ≤ d}`.
    pub forbidden: Vec<usize>,
    pub has_s_cycle: bool,
    pub has_q_cycle: bool,
    pub q_cycle_count: usize,
    /// `None` when `d < 2`.
    pub at_least_d_q_cycles: Option<bool>,
    /// `Some(_)` only when there are exactly `d` q-cycles and `d ≥ 2`.
    pub exactly_d_disjoint_equal: Option<bool>,
    /// Common weight of the q-cycles when they all agree.
    pub q_cycle_weight: Option<String>,
}

impl CycleStructureReport {
    pub fn holds(&self) -> bool {
        self.forbidden.is_empty() && self.has_s_cycle && self.has_q_cycle
    }
}

impl fmt::Display for CycleStructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (&q, &count) = match self.lengths.iter().next() {
            Some(first) => first,
            None => return write!(f, "no cycles"),
        };
        let disjoint = if self.exactly_d_disjoint_equal == Some(true) {
            "disjoint "
        } else {
            ""
        };
        write!(f, "{count} {disjoint}{q}-cycles")?;
        if let Some(w) = &self.q_cycle_weight {
            write!(f, " weight {w}")?;
        }
        let others: Vec<String> = self.lengths.keys().skip(1).map(|l| format!("{l}-cycles")).collect();
        if !others.is_empty() {
            write!(f, ", {} only", others.join(" and "))?;
        }
        if !self.forbidden.is_empty() {
            let list: Vec<String> = self.forbidden.iter().map(usize::to_string).collect();
            write!(f, " (forbidden lengths {})", list.join(","))?;
        }
        Ok(())
    }
}

pub fn cycle_structure_check(g: &WeightedDigraph, arc: &ArcParams) -> CycleStructureReport {
    let report = simple_cycles(g);
    let q = arc.q as usize;
    let s = arc.s as usize;
    let d = arc.d as usize;
    let allowed = |len: usize| len == s || (len.is_multiple_of(q) && len / q >= 1 && len / q <= d);
    let lengths = report.histogram();
    let forbidden: Vec<usize> = lengths.keys().copied().filter(|&l| !allowed(l)).collect();
    let q_cycles = report.of_length(q);
    let q_cycle_weight = match q_cycles.split_first() {
        Some((first, rest)) if rest.iter().all(|c| c.weight == first.weight) => {
            Some(display_rat(&first.weight))
        }
        _ => None,
    };
    let exactly_d_disjoint_equal = (d >= 2 && q_cycles.len() == d).then(|| {
        let disjoint = q_cycles
            .iter()
            .enumerate()
            .all(|(i, a)| q_cycles[i + 1..].iter().all(|b| a.is_disjoint_from(b)));
        disjoint && q_cycle_weight.is_some()
    });
    CycleStructureReport {
        forbidden,
        has_s_cycle: report.count(s) > 0,
        has_q_cycle: !q_cycles.is_empty(),
        q_cycle_count: q_cycles.len(),
        at_least_d_q_cycles: (d >= 2).then_some(q_cycles.len() >= d),
        exactly_d_disjoint_equal,
        q_cycle_weight,
        lengths,
    }
}
