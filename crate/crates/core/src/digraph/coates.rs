use num_traits::{One, Zero};

use super::cycles::{for_each_linear, simple_cycles};
use super::{DigraphError, WeightedDigraph};
use crate::algebra::{RatPoly, RatScalar};

/// Linear-digraph enumeration is exponential; refuse larger graphs unless
/// the caller raises the bound explicitly.
pub const DEFAULT_COATES_BOUND: usize = 16;

/// `det(tI - A)` from the cycle structure alone:
/// `k_i = Σ_{L ∈ 𝓛_i} (-1)^{c(L)} π(L)`.
pub fn charpoly_coates(g: &WeightedDigraph) -> Result<RatPoly, DigraphError> {
    charpoly_coates_bounded(g, DEFAULT_COATES_BOUND)
}

pub fn charpoly_coates_bounded(g: &WeightedDigraph, bound: usize) -> Result<RatPoly, DigraphError> {
    let n = g.order();
    if n > bound {
        return Err(DigraphError::SizeBound {
            n,
            bound,
            what: "Coates expansion",
        });
    }
    let mut k = vec![RatScalar::zero(); n + 1];
    k[0] = RatScalar::one();
    let report = simple_cycles(g);
    for_each_linear(&report, n, |cycles, verts, weight| {
        if cycles.len() % 2 == 0 {
            k[verts] += weight;
        } else {
            k[verts] -= weight;
        }
    })?;
    // k_i multiplies t^(n - i)
    k.reverse();
    Ok(RatPoly::new(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{charpoly_of, int, rat, RatMatrix};

    #[test]
    fn single_loop() {
        let g = WeightedDigraph::from_edges(1, [(0, 0, rat(2, 7))]).unwrap();
        assert_eq!(
            charpoly_coates(&g).unwrap(),
            RatPoly::new(vec![rat(-2, 7), int(1)])
        );
    }

    #[test]
    fn two_cycle_plus_loop() {
        let (a, b, c) = (rat(1, 3), rat(5, 2), rat(3, 4));
        let g = WeightedDigraph::from_edges(
            2,
            [(0, 1, a.clone()), (1, 0, b.clone()), (0, 0, c.clone())],
        )
        .unwrap();
        // t^2 - c t - a b
        let expect = RatPoly::new(vec![-(&a * &b), -c, int(1)]);
        assert_eq!(charpoly_coates(&g).unwrap(), expect);
        assert_eq!(charpoly_of(&g.to_matrix()), expect);
    }

    #[test]
    fn half_identity_plus_half_cycle() {
        let h = rat(1, 2);
        let edges = (0..3).flat_map(|i| [(i, i, h.clone()), (i, (i + 1) % 3, h.clone())]);
        let g = WeightedDigraph::from_edges(3, edges).unwrap();
        let expect = &RatPoly::new(vec![-h.clone(), int(1)]).pow(3) - &RatPoly::constant(rat(1, 8));
        assert_eq!(charpoly_coates(&g).unwrap(), expect);
    }

    #[test]
    fn empty_graph_is_t_to_the_n() {
        let g = WeightedDigraph::from_matrix(&RatMatrix::zeros(3)).unwrap();
        assert_eq!(charpoly_coates(&g).unwrap(), RatPoly::monomial(int(1), 3));
    }

    #[test]
    fn bound_is_enforced() {
        let g = WeightedDigraph::empty(17);
        assert!(matches!(charpoly_coates(&g), Err(DigraphError::SizeBound { .. })));
        assert!(charpoly_coates_bounded(&g, 17).is_ok());
    }
}
