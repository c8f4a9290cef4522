//! Farey fractions, Farey pairs and the classification of Karpelevič arcs.
//!
//! Each Farey pair `(p/q, r/s)` of order `n` (with `q < s` after sorting the
//! endpoints by denominator) bounds one arc of ∂Θₙ. With `d = ⌊n/q⌋` the arc's
//! reduced polynomial falls into exactly one of four types:
//!
//! | type | condition            | reduced polynomial              | degree |
//! |------|----------------------|---------------------------------|--------|
//! | 0    | `q = 1`              | `(t - β)^n - α^n`               | `n`    |
//! | I    | `d = 1`              | `t^s - β t^(s-q) - α`           | `s`    |
//! | II   | `d ≥ 2`, `s < q d`   | `(t^q - β)^d - α^d t^z`         | `q d`  |
//! | III  | `d ≥ 2`, `s > q d`   | `t^y (t^q - β)^d - α^d`         | `s`    |
//!
//! with `z = q d - s` and `y = s - q d`, both in `1..q`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("Farey order must be at least {min}, got {n}")]
    OrderTooSmall { n: u64, min: u64 },
    #[error("{0}/{1} is not a reduced fraction in [0, 1)")]
    InvalidFraction(u64, u64),
    #[error("({lo}, {hi}) is not a Farey pair of order {n}")]
    NotAPair { lo: String, hi: String, n: u64 },
    #[error("arc endpoints share the denominator {0}")]
    EqualDenominators(u64),
    #[error("degenerate arc: s = q*d = {0} cannot happen for coprime endpoints")]
    DegenerateArc(u64),
    #[error("inconsistent arc parameters: {0}")]
    InvalidArc(String),
}

/// Reduced fraction `p/q` with `0 ≤ p < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: u64,
    q: u64,
}

impl Fraction {
    pub fn new(p: u64, q: u64) -> Result<Self, FareyError> {
        if q == 0 || p >= q || p.gcd(&q) != 1 {
            return Err(FareyError::InvalidFraction(p, q));
        }
        Ok(Fraction { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.p) * u128::from(other.q)).cmp(&(u128::from(other.p) * u128::from(self.q)))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Two consecutive elements of 𝓕ₙ. The last pair of the circle wraps:
/// `hi` is `0/1` read at angle 2π, flagged by `wraps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FareyPair {
    pub lo: Fraction,
    pub hi: Fraction,
    pub order: u64,
    pub wraps: bool,
}

impl FareyPair {
    /// Numerator of `hi` as an angle fraction: 1 for the wraparound `0/1`.
    fn hi_numerator(&self) -> u64 {
        if self.wraps {
            self.hi.q
        } else {
            self.hi.p
        }
    }

    /// `hi.p * lo.q - lo.p * hi.q`, which is 1 for every Farey pair.
    pub fn determinant(&self) -> i128 {
        i128::from(self.hi_numerator()) * i128::from(self.lo.q)
            - i128::from(self.lo.p) * i128::from(self.hi.q)
    }

    pub fn lo_angle_fraction(&self) -> (u64, u64) {
        (self.lo.p, self.lo.q)
    }

    pub fn hi_angle_fraction(&self) -> (u64, u64) {
        (self.hi_numerator(), self.hi.q)
    }

    /// Pairs lying in the closed upper half circle, angles in `[0, π]`.
    pub fn in_upper_half(&self) -> bool {
        !self.wraps && 2 * self.hi.p <= self.hi.q
    }
}

impl fmt::Display for FareyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.wraps {
            write!(f, "({}, {} wrap)", self.lo, self.hi)
        } else {
            write!(f, "({}, {})", self.lo, self.hi)
        }
    }
}

/// 𝓕ₙ in ascending order.
pub fn farey_sequence(n: u64) -> Result<Vec<Fraction>, FareyError> {
    if n < 1 {
        return Err(FareyError::OrderTooSmall { n, min: 1 });
    }
    // next-term recurrence; stops before 1/1
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    let mut out = vec![Fraction { p: 0, q: 1 }];
    while c < d {
        out.push(Fraction { p: c, q: d });
        let k = (n + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        (a, b, c, d) = (c, d, nc, nd);
    }
    Ok(out)
}

/// Every arc of the circle: consecutive elements plus the wraparound pair.
pub fn farey_pairs(n: u64) -> Result<Vec<FareyPair>, FareyError> {
    if n < 2 {
        return Err(FareyError::OrderTooSmall { n, min: 2 });
    }
    let seq = farey_sequence(n)?;
    let mut pairs: Vec<FareyPair> = seq
        .windows(2)
        .map(|w| FareyPair {
            lo: w[0],
            hi: w[1],
            order: n,
            wraps: false,
        })
        .collect();
    pairs.push(FareyPair {
        lo: *seq.last().expect("n >= 2 gives at least two fractions"),
        hi: seq[0],
        order: n,
        wraps: true,
    });
    debug_assert!(pairs.iter().all(|p| p.determinant() == 1));
    Ok(pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcType {
    #[serde(rename = "0")]
    Type0,
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
    #[serde(rename = "III")]
    TypeIII,
}

impl ArcType {
    pub fn label(&self) -> &'static str {
        match self {
            ArcType::Type0 => "0",
            ArcType::TypeI => "I",
            ArcType::TypeII => "II",
            ArcType::TypeIII => "III",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim().trim_start_matches("Type").trim_start_matches("type") {
            "0" => Some(ArcType::Type0),
            "I" | "1" => Some(ArcType::TypeI),
            "II" | "2" => Some(ArcType::TypeII),
            "III" | "3" => Some(ArcType::TypeIII),
            _ => None,
        }
    }
}

impl fmt::Display for ArcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type{}", self.label())
    }
}

/// A classified arc. `(p, q)` is the small-denominator endpoint (reached at
/// α = 0), `(r, s)` the large-denominator one (reached at α = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcParams {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub s: u64,
    pub d: u64,
    #[serde(rename = "type")]
    pub arc_type: ArcType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<u64>,
}

impl ArcParams {
    /// Type from `(n, q, s)` alone, with `z`/`y` filled in.
    pub fn from_endpoints(n: u64, p: u64, q: u64, r: u64, s: u64) -> Result<Self, FareyError> {
        if q == s {
            return Err(FareyError::EqualDenominators(q));
        }
        if q > s || q == 0 {
            return Err(FareyError::InvalidArc(format!("need 0 < q < s, got q={q}, s={s}")));
        }
        let d = n / q;
        let (arc_type, z, y) = if q == 1 {
            (ArcType::Type0, None, None)
        } else if d == 1 {
            (ArcType::TypeI, None, None)
        } else {
            match s.cmp(&(q * d)) {
                Ordering::Less => (ArcType::TypeII, Some(q * d - s), None),
                Ordering::Greater => (ArcType::TypeIII, None, Some(s - q * d)),
                Ordering::Equal => return Err(FareyError::DegenerateArc(s)),
            }
        };
        let arc = ArcParams {
            n,
            p,
            q,
            r,
            s,
            d,
            arc_type,
            z,
            y,
        };
        arc.validate()?;
        Ok(arc)
    }

    /// Checks every structural invariant; used on arcs read from JSON.
    pub fn validate(&self) -> Result<(), FareyError> {
        let bad = |msg: String| Err(FareyError::InvalidArc(msg));
        let &ArcParams {
            n, p, q, r, s, d, ..
        } = self;
        if q == 0 || q >= s {
            return bad(format!("need 0 < q < s, got q={q}, s={s}"));
        }
        if s > n {
            return bad(format!("endpoint denominator s={s} exceeds n={n}"));
        }
        if p.gcd(&q) != 1 || r.gcd(&s) != 1 || p > q || r >= s {
            return bad(format!("endpoints {p}/{q}, {r}/{s} are not reduced angle fractions"));
        }
        if d != n / q {
            return bad(format!("d={d} but floor(n/q)={}", n / q));
        }
        let expect = match (q, d) {
            (1, _) => ArcType::Type0,
            (_, 1) => ArcType::TypeI,
            _ if s < q * d => ArcType::TypeII,
            _ if s > q * d => ArcType::TypeIII,
            _ => return Err(FareyError::DegenerateArc(s)),
        };
        if expect != self.arc_type {
            return bad(format!("parameters imply {expect}, not {}", self.arc_type));
        }
        let (ez, ey) = match expect {
            ArcType::TypeII => (Some(q * d - s), None),
            ArcType::TypeIII => (None, Some(s - q * d)),
            _ => (None, None),
        };
        if self.z != ez || self.y != ey {
            return bad(format!("z/y = {:?}/{:?}, expected {ez:?}/{ey:?}", self.z, self.y));
        }
        for v in [ez, ey].into_iter().flatten() {
            if v < 1 || v >= q {
                return bad(format!("deficiency {v} outside 1..{q}"));
            }
        }
        Ok(())
    }

    /// Degree of the reduced polynomial.
    pub fn reduced_degree(&self) -> u64 {
        match self.arc_type {
            ArcType::TypeII => self.q * self.d,
            _ => self.s,
        }
    }

    /// Power of `t` divided out of the full arc polynomial to reach the
    /// reduced one: `min(s, q d)`.
    pub fn extraneous_zero_roots(&self) -> u64 {
        self.s.min(self.q * self.d)
    }

    /// True when the reduced polynomial has degree `n`, i.e. an n×n matrix
    /// can realize it.
    pub fn realizable_at_order(&self) -> bool {
        self.reduced_degree() == self.n
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("arc params always serialise")
    }

    pub fn from_json_str(text: &str) -> Result<Self, FareyError> {
        let arc: ArcParams =
            serde_json::from_str(text).map_err(|e| FareyError::InvalidArc(e.to_string()))?;
        arc.validate()?;
        Ok(arc)
    }
}

impl fmt::Display for ArcParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} {}/{}-{}/{} d={}",
            self.arc_type, self.n, self.p, self.q, self.r, self.s, self.d
        )?;
        if let Some(z) = self.z {
            write!(f, " z={z}")?;
        }
        if let Some(y) = self.y {
            write!(f, " y={y}")?;
        }
        Ok(())
    }
}

/// Classifies the arc bounded by `pair`.
pub fn classify_arc(n: u64, pair: &FareyPair) -> Result<ArcParams, FareyError> {
    // adjacent in F_n iff the determinant is 1 and the mediant's denominator exceeds n
    let (_, lq) = pair.lo_angle_fraction();
    let (_, hq) = pair.hi_angle_fraction();
    if pair.order != n || pair.determinant() != 1 || lq + hq <= n || lq.max(hq) > n {
        return Err(FareyError::NotAPair {
            lo: pair.lo.to_string(),
            hi: pair.hi.to_string(),
            n,
        });
    }
    let (lp, _) = pair.lo_angle_fraction();
    let (hp, _) = pair.hi_angle_fraction();
    match lq.cmp(&hq) {
        Ordering::Less => ArcParams::from_endpoints(n, lp, lq, hp, hq),
        Ordering::Greater => ArcParams::from_endpoints(n, hp, hq, lp, lq),
        Ordering::Equal => Err(FareyError::EqualDenominators(lq)),
    }
}

/// `(pair, arc)` for every Farey pair of order `n`, in circular order.
pub fn classified_arcs(n: u64) -> Result<Vec<(FareyPair, ArcParams)>, FareyError> {
    farey_pairs(n)?
        .into_iter()
        .map(|pair| classify_arc(n, &pair).map(|arc| (pair, arc)))
        .collect()
}

/// The arc of order `n` whose endpoints have denominators `q < s` and with
/// `p/q < r/s`, i.e. `r q - p s = 1`.
pub fn arc_with_denominators(n: u64, q: u64, s: u64) -> Result<ArcParams, FareyError> {
    if q == 0 || q >= s || q.gcd(&s) != 1 {
        return Err(FareyError::InvalidArc(format!(
            "denominators q={q}, s={s} must be coprime with q < s"
        )));
    }
    if s > n || q + s <= n {
        return Err(FareyError::InvalidArc(format!(
            "no arc of order {n} joins denominators {q} and {s}"
        )));
    }
    // p s = -1 (mod q)
    let p = (0..q)
        .find(|&p| (p * s + 1).is_multiple_of(q))
        .expect("s is invertible mod q");
    let r = (p * s + 1) / q;
    ArcParams::from_endpoints(n, p, q, r, s)
}
