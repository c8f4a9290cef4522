use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Arc, Mutex, OnceLock};

use super::trace::{region_boundary, ArcTrace};
use super::{BoundaryError, ComplexPoint};

pub const DEFAULT_SAMPLES: usize = 512;

const BUCKETS: usize = 1024;
const EPS: f64 = 1e-12;

type Segment = (ComplexPoint, ComplexPoint);

/// ∂Θₙ as a closed polyline with an angular index, for radial membership.
#[derive(Debug, Clone)]
pub struct Region {
    pub n: u64,
    pub traces: Vec<ArcTrace>,
    segments: Vec<Segment>,
    buckets: Vec<Vec<usize>>,
}

fn bucket_of(theta: f64) -> usize {
    let t = (theta + PI).rem_euclid(TAU) / TAU;
    ((t * BUCKETS as f64) as usize).min(BUCKETS - 1)
}

fn cross(a: ComplexPoint, b: ComplexPoint) -> f64 {
    a.re * b.im - a.im * b.re
}

fn dot(a: ComplexPoint, b: ComplexPoint) -> f64 {
    a.re * b.re + a.im * b.im
}

fn sub(a: ComplexPoint, b: ComplexPoint) -> ComplexPoint {
    ComplexPoint::new(a.re - b.re, a.im - b.im)
}

fn segment_distance(p: ComplexPoint, (a, b): Segment) -> f64 {
    let e = sub(b, a);
    let len2 = dot(e, e);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(sub(p, a), e) / len2).clamp(0.0, 1.0)
    };
    p.dist(&ComplexPoint::new(a.re + t * e.re, a.im + t * e.im))
}

/// Farthest distance along the unit ray `u` at which it meets the segment.
fn ray_hit(u: ComplexPoint, (a, b): Segment) -> Option<f64> {
    let e = sub(b, a);
    let denom = cross(u, e);
    let scale = e.abs().max(EPS);
    if denom.abs() <= EPS * scale {
        // parallel: only a collinear segment through the ray's line counts
        if cross(a, u).abs() > 1e-12 {
            return None;
        }
        let far = dot(a, u).max(dot(b, u));
        return (far >= 0.0).then_some(far);
    }
    let t = cross(a, e) / denom;
    let s = cross(a, u) / denom;
    (t >= -EPS && (-1e-9..=1.0 + 1e-9).contains(&s)).then_some(t.max(0.0))
}

impl Region {
    pub fn new(n: u64, m: usize) -> Result<Self, BoundaryError> {
        Ok(Self::from_traces(n, region_boundary(n, m)?))
    }

    pub fn from_traces(n: u64, traces: Vec<ArcTrace>) -> Self {
        let mut segments = Vec::new();
        for t in &traces {
            for w in t.samples.windows(2) {
                segments.push((w[0].point, w[1].point));
            }
        }
        let mut buckets = vec![Vec::new(); BUCKETS];
        for (idx, &(a, b)) in segments.iter().enumerate() {
            if segment_distance(ComplexPoint::new(0.0, 0.0), (a, b)) < 1e-6 {
                for bucket in buckets.iter_mut() {
                    bucket.push(idx);
                }
                continue;
            }
            let ta = a.arg();
            let sweep = (b.arg() - ta + PI).rem_euclid(TAU) - PI;
            let (lo, width) = if sweep >= 0.0 { (ta, sweep) } else { (ta + sweep, -sweep) };
            let first = bucket_of(lo - 1e-9);
            let count = ((width + 2e-9) / TAU * BUCKETS as f64).ceil() as usize + 1;
            for k in 0..count.min(BUCKETS) {
                buckets[(first + k) % BUCKETS].push(idx);
            }
        }
        for bucket in buckets.iter_mut() {
            bucket.dedup();
        }
        Region {
            n,
            traces,
            segments,
            buckets,
        }
    }

    /// Boundary radius in direction `theta`; 0 if no arc covers it.
    pub fn radius_at(&self, theta: f64) -> f64 {
        let u = ComplexPoint::new(theta.cos(), theta.sin());
        self.buckets[bucket_of(theta)]
            .iter()
            .filter_map(|&i| ray_hit(u, self.segments[i]))
            .fold(0.0, f64::max)
    }

    /// Distance from `z` to the boundary polyline.
    pub fn boundary_distance(&self, z: ComplexPoint) -> f64 {
        self.segments
            .iter()
            .map(|&s| segment_distance(z, s))
            .fold(f64::INFINITY, f64::min)
    }

    /// Radial test `|z| ≤ r(arg z) + tol`, backed by a distance check so
    /// that points within `tol` of a thin region still count.
    pub fn contains(&self, z: ComplexPoint, tol: f64) -> bool {
        let r = z.abs();
        if r <= tol {
            return true;
        }
        r <= self.radius_at(z.arg()) + tol || self.boundary_distance(z) <= tol
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Region>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Region>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Membership of `z` in Θₙ, against a boundary traced once per `n` with
/// `DEFAULT_SAMPLES` samples per arc.
pub fn contains(n: u64, z: ComplexPoint, tol: f64) -> Result<bool, BoundaryError> {
    let cached = cache().lock().expect("region cache poisoned").get(&n).cloned();
    let region = match cached {
        Some(r) => r,
        None => {
            let built = Arc::new(Region::new(n, DEFAULT_SAMPLES)?);
            cache()
                .lock()
                .expect("region cache poisoned")
                .entry(n)
                .or_insert(built)
                .clone()
        }
    };
    Ok(region.contains(z, tol))
}
