//! Acceptance run: one PASS/FAIL line per criterion, with timings.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use karpelevic_core::algebra::{charpoly_exact, rat, RatPoly, RatScalar, StochMatrix};
use karpelevic_core::boundary::{
    contains, region_boundary, spectrum, trace_arc, ComplexPoint, Region, DEFAULT_SAMPLES,
};
use karpelevic_core::digraph::{
    charpoly_coates, find_perm_similarity, is_perm_similar, simple_cycles, SimilarityLimits,
    WeightedDigraph,
};
use karpelevic_core::farey::{arc_with_denominators, ArcParams};
use karpelevic_core::itopoly::{closed_form, coefficient_identity_check, full_arc_poly, reduced_ito};
use karpelevic_core::realize::{
    build_sparsest, enumerate_sparsest, type2_augment, type3_alpha_rows, verify_realization,
    AugmentedTypeII, Composition,
};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn grid_alphas() -> [RatScalar; 4] {
    [rat(1, 7), rat(1, 3), rat(1, 2), rat(9, 10)]
}

fn brute() -> SimilarityLimits {
    SimilarityLimits {
        max_brute: 20,
        ..SimilarityLimits::default()
    }
}

fn similar(a: &StochMatrix, b: &StochMatrix) -> bool {
    find_perm_similarity(a, b, brute()).unwrap().is_some()
}

fn criterion_1() -> Outcome {
    let arc = arc_with_denominators(12, 4, 9).map_err(|e| e.to_string())?;
    let alpha = rat(1, 3);
    let classes = enumerate_sparsest(&arc).map_err(|e| e.to_string())?;
    ensure!(classes.len() == 4, "{} classes", classes.len());
    let built: Vec<StochMatrix> = classes
        .iter()
        .map(|x| build_sparsest(&arc, &alpha, x).unwrap())
        .collect();
    for i in 0..4 {
        for j in i + 1..4 {
            ensure!(!similar(&built[i], &built[j]), "classes {i} and {j} are similar");
        }
    }
    let printed = [
        common::a1(&alpha),
        common::a2(&alpha),
        common::a3(&alpha),
        common::a4(&alpha),
    ];
    let mut hit = BTreeSet::new();
    for (k, m) in built.iter().enumerate() {
        let matches: Vec<usize> = (0..4).filter(|&f| similar(m, &printed[f])).collect();
        ensure!(matches.len() == 1, "class {:?} matches fixtures {matches:?}", classes[k].parts);
        hit.insert(matches[0]);
    }
    ensure!(hit.len() == 4, "fixtures hit: {hit:?}");
    Ok("4 classes, pairwise dissimilar, bijective with A1-A4".into())
}

fn criterion_2() -> Outcome {
    let arc = arc_with_denominators(15, 4, 15).map_err(|e| e.to_string())?;
    let alpha = rat(2, 5);
    let classes = enumerate_sparsest(&arc).map_err(|e| e.to_string())?;
    let parts: BTreeSet<Vec<usize>> = classes.iter().map(|c| c.parts.clone()).collect();
    let listed: BTreeSet<Vec<usize>> =
        [vec![0, 0, 3], vec![0, 1, 2], vec![0, 2, 1], vec![1, 1, 1]].into_iter().collect();
    ensure!(parts == listed, "classes {parts:?}");
    // (k q + y_1 + … + y_k), 1-based; the last row is always 15
    let expected: BTreeMap<Vec<usize>, Vec<usize>> = [
        (vec![0, 0, 3], vec![4, 8, 15]),
        (vec![0, 1, 2], vec![4, 9, 15]),
        (vec![0, 2, 1], vec![4, 10, 15]),
        (vec![1, 1, 1], vec![5, 10, 15]),
    ]
    .into_iter()
    .collect();
    let mut built = Vec::new();
    for c in &classes {
        let rows: Vec<usize> = type3_alpha_rows(4, 3, 3, c)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|r| r + 1)
            .collect();
        ensure!(rows == expected[&c.parts], "{:?}: alpha rows {rows:?}", c.parts);
        let m = build_sparsest(&arc, &alpha, c).map_err(|e| e.to_string())?;
        let report = verify_realization(&m, &arc, &alpha).map_err(|e| e.to_string())?;
        ensure!(report.holds() && report.structure.holds(), "{:?}: {report}", c.parts);
        built.push(m);
    }
    for i in 0..built.len() {
        for j in i + 1..built.len() {
            ensure!(!is_perm_similar(&built[i], &built[j]).unwrap(), "classes {i}, {j} similar");
        }
    }
    Ok("4 classes (0,0,3) (0,1,2) (0,2,1) (1,1,1); alpha rows from the position formula".into())
}

/// Every arc of the exact-identity grid.
fn grid_arcs() -> Vec<ArcParams> {
    let mut arcs = Vec::new();
    for n in 3..=8 {
        arcs.push(arc_with_denominators(n, 1, n).unwrap());
    }
    for q in 2..=5u64 {
        for n in q + 1..2 * q {
            if n.gcd(&q) == 1 {
                arcs.push(arc_with_denominators(n, q, n).unwrap());
            }
        }
        for d in 2..=4u64 {
            for k in 1..q {
                if k.gcd(&q) != 1 {
                    continue;
                }
                arcs.push(arc_with_denominators(q * d, q, q * d - k).unwrap());
                arcs.push(arc_with_denominators(q * d + k, q, q * d + k).unwrap());
            }
        }
    }
    arcs
}

/// Independent expansion of `t^s (t^q - β)^d - α^d t^(qd)` divided by `t^min(s, qd)`.
fn oracle_reduced(arc: &ArcParams, alpha: &RatScalar) -> RatPoly {
    let (q, s, d) = (arc.q as usize, arc.s as usize, arc.d as usize);
    let beta = RatScalar::one() - alpha;
    let mut full = vec![RatScalar::zero(); s + q * d + 1];
    let mut binom = RatScalar::one();
    for j in 0..=d {
        let sign = if (d - j) % 2 == 0 { RatScalar::one() } else { -RatScalar::one() };
        full[s + q * j] += &binom * &sign * num_traits::pow(beta.clone(), d - j);
        binom = binom * RatScalar::from_integer((d - j).into()) / RatScalar::from_integer((j + 1).into());
    }
    full[q * d] -= num_traits::pow(alpha.clone(), d);
    let shift = s.min(q * d);
    RatPoly::new(full.split_off(shift))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut per_type = BTreeMap::new();
    for arc in grid_arcs() {
        let classes = enumerate_sparsest(&arc).map_err(|e| format!("{arc}: {e}"))?;
        for alpha in grid_alphas() {
            let expected = closed_form(&arc, &alpha);
            ensure!(
                expected == oracle_reduced(&arc, &alpha),
                "{arc} alpha={alpha}: closed form disagrees with the expanded arc polynomial"
            );
            ensure!(
                full_arc_poly(&arc, &alpha) == expected.shift_up(arc.extraneous_zero_roots() as usize),
                "{arc}: full polynomial mismatch"
            );
            for x in &classes {
                let m = build_sparsest(&arc, &alpha, x).map_err(|e| format!("{arc} {x}: {e}"))?;
                ensure!(charpoly_exact(&m) == expected, "{arc} alpha={alpha} x={x}: charpoly mismatch");
                checked += 1;
                *per_type.entry(arc.arc_type.label()).or_insert(0) += 1;
            }
        }
    }
    Ok(format!("{checked} exact matches {per_type:?}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 2..=6 {
        for k in 0..200 {
            let sparsity = [0.0, 0.3, 0.6][k % 3];
            let m = common::random_stochastic(&mut rng, n, sparsity);
            let g = WeightedDigraph::from_stochastic(&m);
            let coates = charpoly_coates(&g).map_err(|e| e.to_string())?;
            ensure!(coates == charpoly_exact(&m), "order {n} sample {k} differs");
        }
    }
    Ok("1000 matrices, orders 2-6".into())
}

/// `k_j`, the coefficient of `t^(deg - j)`, read straight off the vector.
fn k(p: &RatPoly, j: usize) -> RatScalar {
    let deg = p.coeffs().len() - 1;
    if j > deg {
        RatScalar::zero()
    } else {
        p.coeffs()[deg - j].clone()
    }
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for arc in grid_arcs() {
        for alpha in grid_alphas() {
            let inst = reduced_ito(&arc, &alpha).map_err(|e| e.to_string())?;
            let (q, d) = (arc.q as usize, arc.d as usize);
            let kq = k(&inst.poly, q);
            let lhs = RatScalar::from_integer((2 * d).into()) * k(&inst.poly, 2 * q);
            let rhs = RatScalar::from_integer((d as i64 - 1).into()) * &kq * &kq;
            ensure!(lhs == rhs, "{arc} alpha={alpha}: {lhs} != {rhs}");
            ensure!(coefficient_identity_check(&inst), "{arc}: library check disagrees");
            checked += 1;
        }
    }
    Ok(format!("{checked} polynomials"))
}

struct ChordSearch {
    n: usize,
    q: usize,
    adj: Vec<Vec<bool>>,
    candidates: Vec<(usize, usize)>,
    found: Vec<BTreeSet<(usize, usize)>>,
    chosen: Vec<(usize, usize)>,
}

impl ChordSearch {
    /// Whether every simple path `from ⇝ to` has length `q - 1` or `n - 1`.
    fn paths_ok(&self, v: usize, to: usize, len: usize, seen: &mut Vec<bool>) -> bool {
        if v == to {
            return len + 1 == self.q || len + 1 == self.n;
        }
        for w in 0..self.n {
            if self.adj[v][w] && !seen[w] {
                seen[w] = true;
                let ok = self.paths_ok(w, to, len + 1, seen);
                seen[w] = false;
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, idx: usize) {
        if idx == self.candidates.len() {
            self.found.push(self.chosen.iter().copied().collect());
            return;
        }
        self.run(idx + 1);
        let (u, v) = self.candidates[idx];
        self.adj[u][v] = true;
        let mut seen = vec![false; self.n];
        seen[v] = true;
        if self.paths_ok(v, u, 0, &mut seen) {
            self.chosen.push((u, v));
            self.run(idx + 1);
            self.chosen.pop();
        }
        self.adj[u][v] = false;
    }
}

fn only_q_and_n_cycles(n: usize, q: usize, chords: &BTreeSet<(usize, usize)>) -> bool {
    let edges = (0..n)
        .map(|i| (i, (i + 1) % n))
        .chain(chords.iter().copied())
        .map(|(i, j)| (i, j, RatScalar::one()));
    let g = WeightedDigraph::from_edges(n, edges).unwrap();
    simple_cycles(&g).lengths().all(|l| l == q || l == n)
}

fn chord_characterization(n: usize, q: usize) -> Result<usize, String> {
    let back = |j: usize| (j, (j + n + 1 - q) % n);
    let mut candidates = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if v != (u + 1) % n {
                candidates.push((u, v));
            }
        }
    }
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        adj[i][(i + 1) % n] = true;
    }
    let mut search = ChordSearch {
        n,
        q,
        adj,
        candidates,
        found: Vec::new(),
        chosen: Vec::new(),
    };
    search.run(0);
    let window: BTreeSet<(usize, usize)> = (0..=n - q).map(back).collect();
    let valid: BTreeSet<BTreeSet<(usize, usize)>> = search.found.into_iter().collect();
    // every valid chord set with a q-cycle rotates into the window and uses its first edge
    for s in valid.iter().filter(|s| !s.is_empty()) {
        let fits = (0..n).any(|c| {
            let rotated: BTreeSet<(usize, usize)> =
                s.iter().map(|&(i, j)| ((i + n - c) % n, (j + n - c) % n)).collect();
            rotated.contains(&back(0)) && rotated.is_subset(&window)
        });
        ensure!(fits, "({n},{q}): chord set {s:?} is outside the family");
    }
    // conversely every family member has only q- and n-cycles
    let extra: Vec<(usize, usize)> = (1..=n - q).map(back).collect();
    for mask in 0u32..(1 << extra.len()) {
        let mut t: BTreeSet<(usize, usize)> = BTreeSet::from([back(0)]);
        t.extend((0..extra.len()).filter(|b| mask >> b & 1 == 1).map(|b| extra[b]));
        ensure!(only_q_and_n_cycles(n, q, &t), "({n},{q}): family member {t:?} has other cycles");
        ensure!(valid.contains(&t), "({n},{q}): search missed {t:?}");
    }
    Ok(valid.len() - 1)
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (n, q) in [(5, 3), (5, 4), (7, 4)] {
        notes.push(format!("({n},{q}): {} chord sets", chord_characterization(n, q)?));
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0f64;
    let mut arcs = 0;
    for n in 2..=10 {
        for t in region_boundary(n, DEFAULT_SAMPLES).map_err(|e| e.to_string())? {
            let a = t.arc;
            let e0 = t.start().dist(&ComplexPoint::root_of_unity(a.p, a.q));
            let e1 = t.end().dist(&ComplexPoint::root_of_unity(a.r, a.s));
            worst = worst.max(e0).max(e1);
            ensure!(e0 <= 1e-9 && e1 <= 1e-9, "{a}: endpoint errors {e0:e}, {e1:e}");
            arcs += 1;
        }
    }
    Ok(format!("{arcs} arcs, worst endpoint error {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    let arcs = [
        arc_with_denominators(5, 1, 5).unwrap(),
        arc_with_denominators(7, 4, 7).unwrap(),
        arc_with_denominators(12, 4, 9).unwrap(),
        arc_with_denominators(15, 4, 15).unwrap(),
        arc_with_denominators(10, 3, 10).unwrap(),
    ];
    let mut types = BTreeSet::new();
    let mut worst = 0.0f64;
    let mut samples = 0;
    for arc in &arcs {
        types.insert(arc.arc_type.label());
        let trace = trace_arc(arc, DEFAULT_SAMPLES).map_err(|e| e.to_string())?;
        let classes = enumerate_sparsest(arc).map_err(|e| e.to_string())?;
        for (i, alpha) in [rat(1, 9), rat(1, 3), rat(3, 5), rat(8, 9)].iter().enumerate() {
            let x = &classes[i % classes.len()];
            let m = build_sparsest(arc, alpha, x).map_err(|e| e.to_string())?;
            let target = trace.point_at(alpha.to_f64().unwrap()).map_err(|e| e.to_string())?;
            let roots = spectrum(&m).map_err(|e| e.to_string())?;
            let best = roots.iter().map(|l| l.dist(&target)).fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
            ensure!(best <= 1e-8, "{arc} alpha={alpha}: nearest eigenvalue at {best:e}");
            samples += 1;
        }
    }
    ensure!(types.len() == 4 && samples == 20, "coverage {types:?}, {samples} samples");
    Ok(format!("{samples} samples over {types:?}, worst {worst:.1e}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut eigen = 0;
    for k in 0..1000 {
        let m = common::random_stochastic(&mut rng, 4, [0.0, 0.25, 0.5, 0.7][k % 4]);
        for lambda in spectrum(&m).map_err(|e| e.to_string())? {
            ensure!(contains(4, lambda, 1e-7).map_err(|e| e.to_string())?, "{lambda} outside Θ4");
            eigen += 1;
        }
    }
    let mut points = 0;
    for n in 2..=6u64 {
        let outer = Region::new(n + 1, DEFAULT_SAMPLES).map_err(|e| e.to_string())?;
        for t in region_boundary(n, DEFAULT_SAMPLES).map_err(|e| e.to_string())? {
            for s in &t.samples {
                ensure!(outer.contains(s.point, 1e-7), "n={n}: {} not in Θ{}", s.point, n + 1);
                points += 1;
            }
        }
    }
    Ok(format!("{eigen} eigenvalues contained; {points} boundary points nested"))
}

fn criterion_10() -> Outcome {
    let alpha = rat(1, 2);
    let arc = arc_with_denominators(12, 4, 9).unwrap();
    let x = Composition::new(vec![0, 3, 3], 4).unwrap();
    let base = AugmentedTypeII::from_sparsest(4, 3, 3, &alpha, &x).map_err(|e| e.to_string())?;
    ensure!(base.instantiate(&BTreeMap::new()).unwrap() == common::a1(&alpha), "base is not A1");
    for row in 4..8 {
        let e = (row, base.connector_target(row));
        ensure!(type2_augment(&base, e).is_err(), "connector {e:?} between Γ1 and Γ2 accepted");
    }
    let (p, q, r) = (rat(9, 10), rat(19, 20), rat(7, 8));
    let named = |pairs: &[(&str, &RatScalar)]| -> BTreeMap<String, RatScalar> {
        pairs.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
    };
    let cases: [(&str, Vec<usize>, BTreeMap<String, RatScalar>, StochMatrix); 3] = [
        (
            "A11",
            vec![1, 2, 3],
            named(&[("alpha1", &p), ("alpha2", &q), ("alpha3", &r)]),
            common::a11(&alpha, &p, &q, &r),
        ),
        (
            "A12",
            vec![8, 9, 11],
            named(&[("alpha9", &p), ("alpha10", &q), ("alpha11", &r)]),
            common::a12(&alpha, &p, &q, &r),
        ),
        (
            "A13",
            vec![1, 8, 9],
            named(&[("alpha1", &p), ("alpha9", &q), ("alpha10", &r)]),
            common::a13(&alpha, &p, &q, &r),
        ),
    ];
    for (name, rows, params, printed) in cases {
        let mut g = base.clone();
        for row in rows {
            g = type2_augment(&g, (row, base.connector_target(row)))
                .map_err(|e| format!("{name}: {e}"))?;
        }
        let m = g.instantiate(&params).map_err(|e| format!("{name}: {e}"))?;
        ensure!(m == printed, "{name}: instantiation differs from the printed matrix");
        let report = verify_realization(&m, &arc, &alpha).map_err(|e| e.to_string())?;
        ensure!(report.holds() && report.structure.holds(), "{name}: {report}");
    }
    Ok("A11, A12, A13 reached and verified; 4 Γ1→Γ2 connectors rejected".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("Type II enumeration n=12", criterion_1, Duration::from_secs(5)),
        ("Type III enumeration n=15", criterion_2, Duration::from_secs(5)),
        ("exact polynomial identities", criterion_3, Duration::from_secs(60)),
        ("Coates oracle equivalence", criterion_4, Duration::from_secs(30)),
        ("coefficient identity", criterion_5, Duration::MAX),
        ("q- and n-cycle characterization", criterion_6, Duration::from_secs(120)),
        ("boundary endpoints", criterion_7, Duration::MAX),
        ("eigenvalue on boundary", criterion_8, Duration::MAX),
        ("region soundness", criterion_9, Duration::MAX),
        ("augmentation fidelity", criterion_10, Duration::from_secs(10)),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:.0?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
