use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{Composition, RealizeError};
use crate::farey::{ArcParams, ArcType};

/// Lexicographically smallest cyclic rotation.
pub fn canonical_rotation(parts: &[usize]) -> Vec<usize> {
    (0..parts.len().max(1))
        .map(|k| {
            let mut r = parts.to_vec();
            r.rotate_left(k.min(parts.len()));
            r
        })
        .min()
        .unwrap_or_default()
}

/// Every composition of `total` into `len` parts from `0..bound`, in
/// lexicographic order.
pub fn compositions(total: usize, len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, len: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = len - cur.len() - 1;
        for p in 0..bound.min(rest + 1) {
            if rest - p <= slots * (bound - 1) {
                cur.push(p);
                go(rest - p, len, bound, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if bound > 0 {
        go(total, len, bound, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// One representative per necklace class of the compositions that index the
/// sparsest realizations of `arc`, sorted. Type 0 and Type I arcs have a
/// single sparsest realization and yield one empty composition.
pub fn enumerate_sparsest(arc: &ArcParams) -> Result<Vec<Composition>, RealizeError> {
    if !arc.realizable_at_order() {
        return Err(RealizeError::InvalidParameter(format!(
            "arc {arc} has reduced degree {} below n",
            arc.reduced_degree()
        )));
    }
    let (q, d) = (arc.q as usize, arc.d as usize);
    let total = match arc.arc_type {
        ArcType::Type0 | ArcType::TypeI => {
            return Ok(vec![Composition {
                parts: Vec::new(),
                bound: q,
            }])
        }
        ArcType::TypeII => arc.n as usize - arc.z.unwrap_or(0) as usize - d,
        ArcType::TypeIII => arc.y.unwrap_or(0) as usize,
    };
    let classes: BTreeSet<Vec<usize>> = compositions(total, d, q)
        .par_iter()
        .map(|c| canonical_rotation(c))
        .collect();
    Ok(classes
        .into_iter()
        .map(|parts| Composition { parts, bound: q })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::arc_with_denominators;

    fn parts(list: &[Composition]) -> Vec<Vec<usize>> {
        list.iter().map(|c| c.parts.clone()).collect()
    }

    #[test]
    fn rotations() {
        assert_eq!(canonical_rotation(&[2, 3, 1]), vec![1, 2, 3]);
        assert_eq!(canonical_rotation(&[3, 0, 3]), vec![0, 3, 3]);
        assert_eq!(canonical_rotation(&[]), Vec::<usize>::new());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(6, 3, 4).len(), 10);
        assert_eq!(compositions(1, 2, 3), vec![vec![0, 1], vec![1, 0]]);
        assert!(compositions(7, 2, 3).is_empty());
        // brute force over the cube
        let brute = (0..4usize)
            .flat_map(|a| (0..4usize).flat_map(move |b| (0..4usize).map(move |c| vec![a, b, c])))
            .filter(|v| v.iter().sum::<usize>() == 5)
            .count();
        assert_eq!(compositions(5, 3, 4).len(), brute);
    }

    #[test]
    fn desk_scale_classes() {
        let ii = enumerate_sparsest(&arc_with_denominators(12, 4, 9).unwrap()).unwrap();
        assert_eq!(parts(&ii), vec![vec![0, 3, 3], vec![1, 2, 3], vec![1, 3, 2], vec![2, 2, 2]]);
        let iii = enumerate_sparsest(&arc_with_denominators(15, 4, 15).unwrap()).unwrap();
        assert_eq!(parts(&iii), vec![vec![0, 0, 3], vec![0, 1, 2], vec![0, 2, 1], vec![1, 1, 1]]);
        let small = enumerate_sparsest(&arc_with_denominators(7, 3, 7).unwrap()).unwrap();
        assert_eq!(parts(&small), vec![vec![0, 1]]);
    }

    #[test]
    fn single_object_arcs() {
        let t0 = enumerate_sparsest(&arc_with_denominators(5, 1, 5).unwrap()).unwrap();
        assert_eq!(t0.len(), 1);
        assert!(t0[0].is_empty());
        let t1 = enumerate_sparsest(&arc_with_denominators(5, 4, 5).unwrap()).unwrap();
        assert_eq!(t1.len(), 1);
    }

    #[test]
    fn unrealizable_arc_is_rejected() {
        // (1/5, 1/4) at order 6 has reduced degree 5
        let arc = arc_with_denominators(6, 4, 5).unwrap();
        assert!(enumerate_sparsest(&arc).is_err());
    }
}
