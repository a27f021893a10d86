//! Scalar abstraction for line probabilities.
//!
//! Everything that only needs field arithmetic (configuration validation,
//! the exact distribution, `A_K`, the expected occupation `D_2`) is written
//! against [`Probability`], so the same code runs on `f32`, `f64` and exact
//! rationals. Samplers convert to `f64` once at setup.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Probability: Clone + Debug + PartialOrd + Num + FromPrimitive + ToPrimitive {
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Probability for T where T: Clone + Debug + PartialOrd + Num + FromPrimitive + ToPrimitive {}

/// Parses a plain decimal literal (`0.25`, `-3`, `1e-2` is not accepted)
/// into an exact rational.
pub fn parse_decimal_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let r = Ratio::new(numer, denom);
    Some(if neg { -r } else { r })
}
