//! Exact rational scalars.
//!
//! `RatScalar` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. The helpers here cover the
//! string form used by every file format and CLI flag: `"p/q"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

pub type RatScalar = BigRational;

/// `num / den` from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> RatScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> RatScalar {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or a bare integer `"p"`. Decimal notation is rejected so
/// that exact inputs can never pick up a rounding error.
pub fn parse_rat(text: &str) -> Result<RatScalar, AlgebraError> {
    let bad = || AlgebraError::ParseRational(text.to_owned());
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(bad());
    }
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let is_int = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Always `"num/den"`, including integers (`"1/1"`, `"0/1"`).
pub fn format_rat(value: &RatScalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Short human form: integers without a denominator.
pub fn display_rat(value: &RatScalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format_rat(value)
    }
}

pub fn rat_to_f64(value: &RatScalar) -> f64 {
    if let Some(v) = value.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge numerators and denominators: scale both down before dividing.
    let shift = value.numer().bits().max(value.denom().bits()).saturating_sub(1000);
    let n = (value.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (value.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Open unit interval test, used by every realization constructor.
pub fn in_open_unit(value: &RatScalar) -> bool {
    value.is_positive() && value < &RatScalar::one()
}

pub fn in_closed_unit(value: &RatScalar) -> bool {
    !value.is_negative() && value <= &RatScalar::one()
}

pub fn pow(base: &RatScalar, exp: usize) -> RatScalar {
    let mut acc = RatScalar::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-3").unwrap(), int(-3));
        assert_eq!(parse_rat(" 7 / -14 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_decimals_and_junk() {
        for bad in ["0.5", "1e3", "", "1/0", "a/b", "1//2", "/3"] {
            assert!(parse_rat(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn format_is_always_p_over_q() {
        assert_eq!(format_rat(&int(1)), "1/1");
        assert_eq!(format_rat(&int(0)), "0/1");
        assert_eq!(format_rat(&rat(500, 729)), "500/729");
        assert_eq!(display_rat(&int(3)), "3");
    }

    #[test]
    fn to_f64_survives_huge_terms() {
        let big = BigRational::new(BigInt::from(3) << 3000u32, BigInt::from(2) << 3000u32);
        assert!((rat_to_f64(&big) - 1.5).abs() < 1e-15);
    }
}
