use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::roots::roots_with;
use super::{BoundaryError, ComplexPoint};
use crate::farey::{classified_arcs, ArcParams, ArcType};

/// Smallest continuation step tried before an ambiguity is treated as a
/// branch point.
const MIN_STEP: f64 = 1e-10;
/// The selected root must be at most this fraction of the distance to the
/// runner-up, measured from the predicted point.
const SAFETY: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub alpha: f64,
    pub point: ComplexPoint,
}

/// One boundary arc sampled on a uniform α grid, ascending in α:
/// `samples[0]` is the `e^{2πip/q}` end and the last sample the `e^{2πir/s}` end.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcTrace {
    pub arc: ArcParams,
    pub samples: Vec<Sample>,
    /// Largest polynomial residual over the samples, and at least the
    /// distance of either end from its root of unity.
    pub residual_bound: f64,
}

impl ArcTrace {
    pub fn start(&self) -> ComplexPoint {
        self.samples[0].point
    }

    pub fn end(&self) -> ComplexPoint {
        self.samples[self.samples.len() - 1].point
    }

    /// Mirror image in the real axis, relabeled as `arc`.
    pub fn conjugate(&self, arc: ArcParams) -> ArcTrace {
        ArcTrace {
            arc,
            samples: self
                .samples
                .iter()
                .map(|s| Sample {
                    alpha: s.alpha,
                    point: s.point.conj(),
                })
                .collect(),
            residual_bound: self.residual_bound,
        }
    }

    /// The arc point at an arbitrary `alpha`, continued from the nearest
    /// sample above it.
    pub fn point_at(&self, alpha: f64) -> Result<ComplexPoint, BoundaryError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(BoundaryError::AlphaOutOfRange(alpha));
        }
        let k = self.samples.partition_point(|s| s.alpha < alpha);
        let upper = &self.samples[k];
        if upper.alpha == alpha || k == 0 {
            return Ok(upper.point);
        }
        let lower = &self.samples[k - 1];
        let slope = (Complex64::from(upper.point) - Complex64::from(lower.point))
            / (upper.alpha - lower.alpha);
        let mut state = Tracker {
            arc: &self.arc,
            alpha: upper.alpha,
            point: upper.point.into(),
            slope,
            goal: self.start().into(),
        };
        state.advance(alpha)?;
        Ok(state.point.into())
    }
}

/// Coefficients (ascending) of the reduced arc polynomial at a float α.
pub fn arc_coefficients(arc: &ArcParams, alpha: f64) -> Vec<f64> {
    let beta = 1.0 - alpha;
    let (q, s, d) = (arc.q as usize, arc.s as usize, arc.d as usize);
    // (t^q - β)^d, shifted up by `shift`
    let binomial = |shift: usize, out: &mut Vec<f64>| {
        let mut c = 1.0;
        for j in 0..=d {
            out[shift + q * j] += c * (-beta).powi((d - j) as i32);
            c = c * (d - j) as f64 / (j + 1) as f64;
        }
    };
    match arc.arc_type {
        ArcType::Type0 => {
            let n = arc.n as usize;
            let mut out = vec![0.0; n + 1];
            let mut c = 1.0;
            for j in 0..=n {
                out[j] += c * (-beta).powi((n - j) as i32);
                c = c * (n - j) as f64 / (j + 1) as f64;
            }
            out[0] -= alpha.powi(n as i32);
            out
        }
        ArcType::TypeI => {
            let mut out = vec![0.0; s + 1];
            out[s] = 1.0;
            out[s - q] -= beta;
            out[0] -= alpha;
            out
        }
        ArcType::TypeII => {
            let z = arc.z.expect("type II carries z") as usize;
            let mut out = vec![0.0; q * d + 1];
            binomial(0, &mut out);
            out[z] -= alpha.powi(d as i32);
            out
        }
        ArcType::TypeIII => {
            let y = arc.y.expect("type III carries y") as usize;
            let mut out = vec![0.0; q * d + y + 1];
            binomial(y, &mut out);
            out[0] -= alpha.powi(d as i32);
            out
        }
    }
}

/// Value and derivative of the reduced arc polynomial in factored form,
/// which keeps clustered roots well conditioned for small α.
fn arc_eval(arc: &ArcParams, alpha: f64) -> impl Fn(Complex64) -> (Complex64, Complex64) + '_ {
    let beta = 1.0 - alpha;
    let (q, s, d) = (arc.q as i32, arc.s as i32, arc.d as i32);
    move |t: Complex64| match arc.arc_type {
        ArcType::Type0 => {
            let n = arc.n as i32;
            let u = t - beta;
            (u.powi(n) - alpha.powi(n), u.powi(n - 1) * n as f64)
        }
        ArcType::TypeI => (
            t.powi(s) - t.powi(s - q) * beta - alpha,
            t.powi(s - 1) * s as f64 - t.powi(s - q - 1) * (beta * (s - q) as f64),
        ),
        ArcType::TypeII => {
            let z = arc.z.expect("type II carries z") as i32;
            let w = t.powi(q) - beta;
            let ad = alpha.powi(d);
            (
                w.powi(d) - t.powi(z) * ad,
                t.powi(q - 1) * w.powi(d - 1) * (d * q) as f64 - t.powi(z - 1) * (ad * z as f64),
            )
        }
        ArcType::TypeIII => {
            let y = arc.y.expect("type III carries y") as i32;
            let w = t.powi(q) - beta;
            (
                t.powi(y) * w.powi(d) - alpha.powi(d),
                t.powi(y - 1) * w.powi(d) * y as f64
                    + t.powi(y + q - 1) * w.powi(d - 1) * (d * q) as f64,
            )
        }
    }
}

fn arc_roots(arc: &ArcParams, alpha: f64) -> Result<Vec<ComplexPoint>, BoundaryError> {
    roots_with(&arc_coefficients(arc, alpha), arc_eval(arc, alpha))
}

/// Multiplicity of `e^{2πip/q}` as a root of the reduced polynomial at α = 0.
fn seed_multiplicity(arc: &ArcParams) -> usize {
    match arc.arc_type {
        ArcType::Type0 => arc.n as usize,
        ArcType::TypeI => 1,
        ArcType::TypeII | ArcType::TypeIII => arc.d as usize,
    }
}

fn by_distance(roots: &[ComplexPoint], from: Complex64) -> Vec<(f64, Complex64)> {
    let mut out: Vec<(f64, Complex64)> = roots
        .iter()
        .map(|r| {
            let z = Complex64::from(*r);
            ((z - from).norm(), z)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

struct Tracker<'a> {
    arc: &'a ArcParams,
    alpha: f64,
    point: Complex64,
    /// dz/dα from the last accepted step, for a linear predictor.
    slope: Complex64,
    /// The α = 0 endpoint, used to pick a branch where two roots collide.
    goal: Complex64,
}

impl Tracker<'_> {
    /// Continues downward in α to `target > 0`, halving the step whenever the
    /// nearest root to the prediction is not clearly separated from the next.
    /// If that persists down to `MIN_STEP` the two candidates are a colliding
    /// pair (e.g. conjugate roots meeting on the real axis), and the one
    /// nearer the α = 0 endpoint is kept.
    fn advance(&mut self, target: f64) -> Result<(), BoundaryError> {
        let mut h = self.alpha - target;
        while self.alpha > target {
            let h_try = h.min(self.alpha - target);
            let next = if h_try >= self.alpha - target {
                target
            } else {
                self.alpha - h_try
            };
            let predicted = self.point - self.slope * (self.alpha - next);
            let roots = arc_roots(self.arc, next)?;
            let ranked = by_distance(&roots, predicted);
            let clear = ranked.len() < 2 || ranked[0].0 <= SAFETY * ranked[1].0;
            let branch = !clear && h_try <= MIN_STEP;
            if clear || branch {
                let z = if branch {
                    let (a, b) = (ranked[0].1, ranked[1].1);
                    if (a - self.goal).norm() <= (b - self.goal).norm() {
                        a
                    } else {
                        b
                    }
                } else {
                    ranked[0].1
                };
                self.slope = (self.point - z) / (self.alpha - next);
                self.point = z;
                self.alpha = next;
                h = (2.0 * h_try).min(self.alpha - target).max(MIN_STEP);
            } else {
                h = (h_try / 2.0).max(MIN_STEP);
            }
        }
        Ok(())
    }
}

fn residual(arc: &ArcParams, sample: &Sample) -> f64 {
    arc_eval(arc, sample.alpha)(sample.point.into()).0.norm()
}

/// Traces `arc` on the grid `α_k = k / (m - 1)`.
///
/// The simple root `e^{2πir/s}` at α = 1 seeds a continuation down to the
/// first positive grid point. At α = 0 the arc ends in a root of
/// multiplicity up to `d`: the centroid of that root cluster, polished as a
/// root of `t^q - 1`.
pub fn trace_arc(arc: &ArcParams, m: usize) -> Result<ArcTrace, BoundaryError> {
    if m < 2 {
        return Err(BoundaryError::SampleCount(m));
    }
    arc.validate()?;
    let grid = |k: usize| k as f64 / (m - 1) as f64;
    let end_target: Complex64 = ComplexPoint::root_of_unity(arc.r, arc.s).into();
    let start_target: Complex64 = ComplexPoint::root_of_unity(arc.p, arc.q).into();
    let roots = arc_roots(arc, 1.0)?;
    let (distance, seed) = by_distance(&roots, end_target)[0];
    if distance > 1e-6 {
        return Err(BoundaryError::EndpointMismatch {
            expected: end_target.into(),
            distance,
        });
    }
    let mut tracker = Tracker {
        arc,
        alpha: 1.0,
        point: seed,
        slope: Complex64::new(0.0, 0.0),
        goal: start_target,
    };
    let mut descending = vec![Sample {
        alpha: 1.0,
        point: seed.into(),
    }];
    for k in (1..m - 1).rev() {
        tracker.advance(grid(k))?;
        descending.push(Sample {
            alpha: grid(k),
            point: tracker.point.into(),
        });
    }

    let predicted = tracker.point - tracker.slope * tracker.alpha;
    let roots = arc_roots(arc, 0.0)?;
    let cluster = by_distance(&roots, predicted);
    let mult = seed_multiplicity(arc).min(cluster.len());
    let mut centroid = cluster[..mult].iter().map(|(_, z)| *z).sum::<Complex64>() / mult as f64;
    // Newton on t^q - 1, in which the endpoint is a simple root
    let q = arc.q as i32;
    for _ in 0..3 {
        centroid -= (centroid.powi(q) - 1.0) / (centroid.powi(q - 1) * q as f64);
    }
    if (centroid - start_target).norm() > 1e-6 {
        return Err(BoundaryError::EndpointMismatch {
            expected: start_target.into(),
            distance: (centroid - start_target).norm(),
        });
    }
    descending.push(Sample {
        alpha: 0.0,
        point: centroid.into(),
    });
    descending.reverse();

    let mut bound = (centroid - start_target).norm().max((seed - end_target).norm());
    for s in &descending {
        bound = bound.max(residual(arc, s));
    }
    Ok(ArcTrace {
        arc: *arc,
        samples: descending,
        residual_bound: bound,
    })
}

/// Every boundary arc of Θₙ in counterclockwise order. Arcs in the upper
/// half plane are traced (in parallel); the lower half is their reflection.
pub fn region_boundary(n: u64, m: usize) -> Result<Vec<ArcTrace>, BoundaryError> {
    let arcs = classified_arcs(n)?;
    let len = arcs.len();
    let upper: Vec<usize> = (0..len).filter(|&i| arcs[i].0.in_upper_half()).collect();
    let traced: Vec<ArcTrace> = upper
        .par_iter()
        .map(|&i| trace_arc(&arcs[i].1, m))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(len);
    for (i, (_, arc)) in arcs.iter().enumerate() {
        let own = upper.iter().position(|&u| u == i);
        let trace = match own {
            Some(k) => traced[k].clone(),
            None => {
                let k = upper
                    .iter()
                    .position(|&u| u == len - 1 - i)
                    .expect("Farey pairs are symmetric under t -> 1 - t");
                traced[k].conjugate(*arc)
            }
        };
        out.push(trace);
    }
    Ok(out)
}
