use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{check_open_alpha, Composition, RealizeError};
use crate::algebra::{display_rat, in_open_unit, int, RatMatrix, RatScalar, StochMatrix};
use crate::digraph::cyclic_distance;
use crate::farey::{ArcParams, ArcType};

fn invalid<T>(msg: String) -> Result<T, RealizeError> {
    Err(RealizeError::InvalidParameter(msg))
}

fn stochastic(m: RatMatrix) -> Result<StochMatrix, RealizeError> {
    StochMatrix::new(m).map_err(|e| RealizeError::Infeasible(e.to_string()))
}

/// `β I_n + α C_n`.
pub fn type0(n: usize, alpha: &RatScalar) -> Result<StochMatrix, RealizeError> {
    if n == 0 {
        return invalid("order must be at least 1".into());
    }
    check_open_alpha(alpha)?;
    let beta = RatScalar::one() - alpha;
    let mut m = RatMatrix::zeros(n);
    for i in 0..n {
        let j = (i + 1) % n;
        m.set(i, i, beta.clone());
        let cur = m.get(i, j).clone();
        m.set(i, j, cur + alpha);
    }
    stochastic(m)
}

/// Rows `0..=n-q` split between `i+1` (weight `α_i`) and `i+n+1-q` (weight
/// `1-α_i`); the remaining rows follow the n-cycle. The characteristic
/// polynomial is `t^n - β t^(n-q) - α` with `α = ∏ α_i`.
pub fn type1(n: usize, q: usize, alphas: &[RatScalar]) -> Result<StochMatrix, RealizeError> {
    if q < 2 || q >= n {
        return invalid(format!("need 2 <= q < n, got q={q}, n={n}"));
    }
    if 2 * q <= n {
        return invalid(format!("need 2q > n, got q={q}, n={n}"));
    }
    if q.gcd(&n) != 1 {
        return invalid(format!("gcd(q, n) = {} must be 1", q.gcd(&n)));
    }
    let rows = n + 1 - q;
    if alphas.len() != rows {
        return invalid(format!("expected {rows} alphas, got {}", alphas.len()));
    }
    let mut m = RatMatrix::zeros(n);
    for i in 0..n {
        let fwd = (i + 1) % n;
        if i < rows {
            let a = &alphas[i];
            if !a.is_positive() || a > &RatScalar::one() {
                return invalid(format!("alpha_{} = {} must lie in (0, 1]", i + 1, display_rat(a)));
            }
            m.set(i, fwd, a.clone());
            let back = (i + n + 1 - q) % n;
            let rest = RatScalar::one() - a;
            if !rest.is_zero() {
                m.set(i, back, rest);
            }
        } else {
            m.set(i, fwd, RatScalar::one());
        }
    }
    stochastic(m)
}

fn check_type2_shape(q: usize, d: usize, z: usize) -> Result<(), RealizeError> {
    if q < 2 || d < 2 {
        return invalid(format!("need q >= 2 and d >= 2, got q={q}, d={d}"));
    }
    if z == 0 || z >= q {
        return invalid(format!("need 1 <= z < q, got z={z}, q={q}"));
    }
    Ok(())
}

/// Connector edges `(a_t, b_t)` of the sparsest Type II realization, where
/// block `t` occupies rows `tq..tq+q`.
pub fn type2_connectors(
    q: usize,
    d: usize,
    z: usize,
    x: &Composition,
) -> Result<Vec<(usize, usize)>, RealizeError> {
    check_type2_shape(q, d, z)?;
    if x.bound != q {
        return Err(RealizeError::InvalidComposition(format!(
            "composition bound {} differs from q={q}",
            x.bound
        )));
    }
    x.expect(d, q * d - z - d)?;
    let mut edges = Vec::with_capacity(d);
    let mut offset = 0;
    for t in 0..d {
        if t > 0 {
            offset = (offset + x.parts[t]) % q;
        }
        let a = t * q + offset;
        let b = if t + 1 < d {
            (t + 1) * q + offset
        } else {
            (q - x.parts[0]) % q
        };
        edges.push((a, b));
    }
    Ok(edges)
}

/// `D (⊕ C_q) + α Σ E_{a_t, b_t}` with `D` equal to `1-α` at the rows `a_t`.
pub fn type2_sparsest(
    q: usize,
    d: usize,
    z: usize,
    alpha: &RatScalar,
    x: &Composition,
) -> Result<StochMatrix, RealizeError> {
    check_open_alpha(alpha)?;
    let connectors = type2_connectors(q, d, z, x)?;
    let n = q * d;
    let beta = RatScalar::one() - alpha;
    let mut m = RatMatrix::zeros(n);
    for t in 0..d {
        for i in 0..q {
            m.set(t * q + i, t * q + (i + 1) % q, RatScalar::one());
        }
    }
    for (a, b) in connectors {
        let next = (a / q) * q + (a % q + 1) % q;
        m.set(a, next, beta.clone());
        m.set(a, b, alpha.clone());
    }
    stochastic(m)
}

fn check_type3_shape(q: usize, d: usize, y: usize) -> Result<(), RealizeError> {
    if q < 2 || d < 2 {
        return invalid(format!("need q >= 2 and d >= 2, got q={q}, d={d}"));
    }
    if y == 0 || y >= q {
        return invalid(format!("need 1 <= y < q, got y={y}, q={q}"));
    }
    Ok(())
}

/// Rows whose forward edge carries `α`: `(kq + y_1 + … + y_k - 1) mod n`.
pub fn type3_alpha_rows(
    q: usize,
    d: usize,
    y: usize,
    parts: &Composition,
) -> Result<Vec<usize>, RealizeError> {
    check_type3_shape(q, d, y)?;
    if parts.bound != q {
        return Err(RealizeError::InvalidComposition(format!(
            "composition bound {} differs from q={q}",
            parts.bound
        )));
    }
    parts.expect(d, y)?;
    let n = q * d + y;
    let mut acc = 0;
    Ok((1..=d)
        .map(|k| {
            acc += parts.parts[k - 1];
            (k * q + acc + n - 1) % n
        })
        .collect())
}

/// Back edge of row `i` in the Type III digraphs.
fn back_target(n: usize, q: usize, i: usize) -> usize {
    (i + n + 1 - q) % n
}

/// `D C_n + (I - D) C_n^(n+1-q)` with `D` equal to `α` at the rows from
/// [`type3_alpha_rows`].
pub fn type3_sparsest(
    q: usize,
    d: usize,
    y: usize,
    alpha: &RatScalar,
    parts: &Composition,
) -> Result<StochMatrix, RealizeError> {
    check_open_alpha(alpha)?;
    let rows = type3_alpha_rows(q, d, y, parts)?;
    let n = q * d + y;
    let weights = rows.iter().map(|&r| (r, alpha.clone())).collect();
    Ok(family_matrix(n, q, &weights))
}

fn family_matrix(n: usize, q: usize, weights: &BTreeMap<usize, RatScalar>) -> StochMatrix {
    let mut m = RatMatrix::zeros(n);
    for i in 0..n {
        match weights.get(&i) {
            Some(a) => {
                m.set(i, (i + 1) % n, a.clone());
                m.set(i, back_target(n, q, i), RatScalar::one() - a);
            }
            None => m.set(i, (i + 1) % n, RatScalar::one()),
        }
    }
    StochMatrix::new(m).expect("family weights lie in (0, 1)")
}

/// A Type III realization with several back edges per q-cycle cluster.
///
/// `blocks[t]` lists the rows carrying a back edge `i -> i+1-q (mod n)`,
/// `weights[i]` the forward weight `α_i` of such a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIIIFamilySpec {
    pub n: usize,
    pub q: usize,
    pub d: usize,
    pub y: usize,
    pub alpha: RatScalar,
    pub blocks: Vec<BTreeSet<usize>>,
    pub weights: BTreeMap<usize, RatScalar>,
}

impl TypeIIIFamilySpec {
    /// One singleton block per α-row of the sparsest realization.
    pub fn sparsest(q: usize, d: usize, y: usize, alpha: &RatScalar, parts: &Composition) -> Result<Self, RealizeError> {
        let rows = type3_alpha_rows(q, d, y, parts)?;
        Ok(TypeIIIFamilySpec {
            n: q * d + y,
            q,
            d,
            y,
            alpha: alpha.clone(),
            blocks: rows.iter().map(|&r| BTreeSet::from([r])).collect(),
            weights: rows.iter().map(|&r| (r, alpha.clone())).collect(),
        })
    }

    pub fn validate(&self) -> Result<(), RealizeError> {
        let &TypeIIIFamilySpec { n, q, d, y, .. } = self;
        check_type3_shape(q, d, y)?;
        if n != q * d + y {
            return invalid(format!("n={n} differs from qd+y={}", q * d + y));
        }
        check_open_alpha(&self.alpha)?;
        if self.blocks.len() != d {
            return invalid(format!("expected {d} blocks, got {}", self.blocks.len()));
        }
        let mut seen = BTreeSet::new();
        for (t, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return invalid(format!("block {t} is empty"));
            }
            for &i in block {
                if i >= n {
                    return invalid(format!("row {i} outside 0..{n}"));
                }
                if !seen.insert(i) {
                    return invalid(format!("row {} appears in two blocks", i + 1));
                }
            }
            for &i in block {
                for &j in block.range(i + 1..) {
                    if cyclic_distance(n, i, j) >= q {
                        return invalid(format!(
                            "rows {} and {} share block {t} but are {} apart",
                            i + 1,
                            j + 1,
                            cyclic_distance(n, i, j)
                        ));
                    }
                }
            }
        }
        for (t, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[t + 1..] {
                for &i in a {
                    for &j in b {
                        if cyclic_distance(n, i, j) < q {
                            return invalid(format!(
                                "rows {} and {} lie in different blocks but are only {} apart",
                                i + 1,
                                j + 1,
                                cyclic_distance(n, i, j)
                            ));
                        }
                    }
                }
            }
        }
        let keys: BTreeSet<usize> = self.weights.keys().copied().collect();
        if keys != seen {
            return invalid("weights must be given exactly for the block rows".into());
        }
        for (&i, w) in &self.weights {
            if !in_open_unit(w) {
                return Err(RealizeError::Infeasible(format!(
                    "alpha at row {} = {} must lie in (0, 1)",
                    i + 1,
                    display_rat(w)
                )));
            }
        }
        for (t, block) in self.blocks.iter().enumerate() {
            let product: RatScalar = block.iter().map(|i| &self.weights[i]).product();
            if product != self.alpha {
                return Err(RealizeError::Infeasible(format!(
                    "weights of block {t} multiply to {}, not alpha = {}",
                    display_rat(&product),
                    display_rat(&self.alpha)
                )));
            }
        }
        Ok(())
    }
}

/// Forward edge `i -> i+1` with weight `α_i` (1 off the blocks) and back edge
/// `i -> i+1-q` with weight `1-α_i` on the block rows.
pub fn type3_family(spec: &TypeIIIFamilySpec) -> Result<StochMatrix, RealizeError> {
    spec.validate()?;
    Ok(family_matrix(spec.n, spec.q, &spec.weights))
}

/// The sparsest realization of `arc` at `alpha`. Type 0 and Type I arcs take
/// an empty composition.
pub fn build_sparsest(arc: &ArcParams, alpha: &RatScalar, x: &Composition) -> Result<StochMatrix, RealizeError> {
    if !arc.realizable_at_order() {
        return Err(RealizeError::InvalidParameter(format!(
            "arc {arc} has reduced degree {} below n",
            arc.reduced_degree()
        )));
    }
    let (n, q, d) = (arc.n as usize, arc.q as usize, arc.d as usize);
    match arc.arc_type {
        ArcType::Type0 => type0(n, alpha),
        ArcType::TypeI => {
            check_open_alpha(alpha)?;
            let mut alphas = vec![int(1); n + 1 - q];
            alphas[0] = alpha.clone();
            type1(n, q, &alphas)
        }
        ArcType::TypeII => type2_sparsest(q, d, arc.z.unwrap_or(0) as usize, alpha, x),
        ArcType::TypeIII => type3_sparsest(q, d, arc.y.unwrap_or(0) as usize, alpha, x),
    }
}
