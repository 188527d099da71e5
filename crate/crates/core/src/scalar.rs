//! Scalar fields the linear algebra runs over.
//!
//! A computation runs entirely in one mode: exact rationals ([`Rational`])
//! for certification, or `f64` for large sweeps. Comparisons go through
//! [`Scalar::approx_eq`] / [`Scalar::is_zero_within`], which ignore the
//! tolerance in exact mode.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Comparison thresholds for float mode. Exact mode ignores all of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Entrywise matrix equality.
    pub entry: f64,
    /// Harmonic residual `|(H v)(p)|` at interior vertices.
    pub residual: f64,
    /// Singular values at or below this count as zero.
    pub singular_floor: f64,
    /// Equality of function values when forming level sets.
    pub level: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            entry: 1e-10,
            residual: 1e-9,
            singular_floor: 1e-12,
            level: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.entry, self.residual, self.singular_floor, self.level];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "tolerances must be positive: {self:?}"
            )))
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// `None` for non-finite input.
    fn from_f64(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> Self;

    /// `self -= factor * x` without cloning the operands.
    fn sub_mul_assign(&mut self, factor: &Self, x: &Self);

    /// Exact zero test in exact mode, `|self| <= tol` in float mode.
    fn is_zero_within(&self, tol: f64) -> bool;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// Pivot rule: float mode prefers the larger magnitude; exact mode keeps
    /// the first nonzero candidate.
    fn better_pivot(candidate: &Self, current: &Self) -> bool;

    /// Canonical text: reduced `p/q` (integers without denominator) or the
    /// shortest round-trip decimal.
    fn to_text(&self) -> String;

    fn parse_text(text: &str) -> Result<Self>;

    fn is_exact() -> bool {
        Self::MODE == Mode::Exact
    }

    /// Sign with `tol` slack: `Less`, `Equal` (within tolerance) or `Greater`.
    fn sign_within(&self, tol: f64) -> std::cmp::Ordering {
        if self.is_zero_within(tol) {
            std::cmp::Ordering::Equal
        } else if *self > Self::zero() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Less
        }
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Option<Self> {
        Rational::from_float(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }

    fn sub_mul_assign(&mut self, factor: &Self, x: &Self) {
        *self -= factor * x;
    }

    fn is_zero_within(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn better_pivot(candidate: &Self, current: &Self) -> bool {
        current.is_zero() && !candidate.is_zero()
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Ok(r) = Rational::from_str(t) {
            return Ok(r);
        }
        parse_decimal(t).ok_or_else(|| Error::Parse(format!("not a rational number: {text:?}")))
    }
}

/// Accepts plain decimals such as `-0.25` as exact rationals.
fn parse_decimal(t: &str) -> Option<Rational> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn magnitude(&self) -> Self {
        f64::abs(*self)
    }

    fn sub_mul_assign(&mut self, factor: &Self, x: &Self) {
        *self -= factor * x;
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        f64::abs(self - other) <= tol
    }

    fn better_pivot(candidate: &Self, current: &Self) -> bool {
        f64::abs(*candidate) > f64::abs(*current)
    }

    fn to_text(&self) -> String {
        format!("{self:?}")
    }

    fn parse_text(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
            if q == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            return Ok(p / q);
        }
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse(format!("not a finite number: {text:?}")))
    }
}

/// Shorthand for exact `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_is_canonical() {
        assert_eq!(rat(6, 10).to_text(), "3/5");
        assert_eq!(rat(-4, 2).to_text(), "-2");
        assert_eq!(Rational::parse_text("6/-10").unwrap(), rat(-3, 5));
        assert_eq!(Rational::parse_text("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(Rational::parse_text(" 7 ").unwrap(), rat(7, 1));
        assert!(Rational::parse_text("1/0").is_err());
        assert!(Rational::parse_text("abc").is_err());
    }

    #[test]
    fn float_text_round_trips() {
        for v in [0.1, -2.0, 1e-20, 3.0 / 5.0, 123456.789] {
            let text = v.to_text();
            assert_eq!(f64::parse_text(&text).unwrap(), v);
        }
        assert_eq!(f64::parse_text("3/5").unwrap(), 0.6);
        assert!(f64::parse_text("inf").is_err());
    }

    #[test]
    fn exact_mode_ignores_tolerance() {
        let tiny = rat(1, 1_000_000_000_000);
        assert!(!tiny.is_zero_within(1.0));
        assert!(1e-12_f64.is_zero_within(1e-10));
        assert!(!rat(1, 3).approx_eq(&rat(1, 3 + 1), 1.0));
    }

    #[test]
    fn pivot_rules() {
        assert!(Rational::better_pivot(&rat(1, 9), &rat(0, 1)));
        assert!(!Rational::better_pivot(&rat(9, 1), &rat(1, 9)));
        assert!(f64::better_pivot(&-3.0, &2.0));
    }

    #[test]
    fn tolerances_must_be_positive() {
        assert!(Tolerances::default().validate().is_ok());
        let bad = Tolerances {
            entry: 0.0,
            ..Tolerances::default()
        };
        assert!(bad.validate().is_err());
    }
}
