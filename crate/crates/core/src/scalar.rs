//! Arithmetic backends.
//!
//! Everything in the crate is generic over [`Scalar`], which has two
//! implementations: `f64` (binary64, round-to-nearest-even) and
//! [`Rational`] (arbitrary-precision rationals kept in lowest terms with a
//! positive denominator).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::det;
use crate::matrix::Matrix;

/// Exact rational backend.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Float,
    Exact,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Float => "float",
            Backend::Exact => "exact",
        }
    }
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "float" | "float64" | "f64" => Ok(Backend::Float),
            "exact" | "rational" | "exact-rational" => Ok(Backend::Exact),
            other => Err(format!(
                "unknown backend '{other}' (expected 'float' or 'exact')"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("rational literal '{0}' requires the exact backend")]
    RationalNeedsExact(String),
    #[error("zero denominator in '{0}'")]
    ZeroDenominator(String),
    #[error("not a number: '{0}'")]
    Invalid(String),
}

/// Determinant value together with growth diagnostics from the engine.
#[derive(Debug, Clone, PartialEq)]
pub struct DetOutcome<S> {
    pub value: S,
    /// Bit length of the largest integer intermediate (exact engine only).
    pub max_bits: Option<u64>,
}

/// The numeric contract shared by both backends.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    /// Nearest binary64 value.
    fn to_f64(&self) -> f64;

    /// The exact value as a rational; `None` for non-finite floats.
    fn to_rational(&self) -> Option<Rational>;

    /// Nearest representable value of a rational.
    fn from_rational(r: &Rational) -> Self;

    /// Parses an integer, decimal (optionally with exponent) or, for the
    /// exact backend only, a `p/q` literal.
    fn parse_literal(token: &str) -> Result<Self, ParseScalarError>;

    /// Determinant with the backend's production engine: fraction-free
    /// Bareiss for rationals, partial pivoting for floats.
    fn determinant(m: &Matrix<Self>) -> DetOutcome<Self>;

    /// `|a-b| <= max(abs_tol, rel_tol * max(|a|, |b|))`; exact equality for
    /// the rational backend.
    fn approx_eq(&self, other: &Self, rel_tol: f64, abs_tol: f64) -> bool;

    /// True when `|self| <= rel * scale`; exact zero test for rationals.
    fn is_negligible(&self, rel: f64, scale: f64) -> bool;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Exact
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// Tolerance comparison over any backend (see [`Scalar::approx_eq`]).
pub fn compare_with_tolerance<S: Scalar>(a: &S, b: &S, rel_tol: f64, abs_tol: f64) -> bool {
    debug_assert!(rel_tol >= 0.0 && abs_tol >= 0.0);
    a.approx_eq(b, rel_tol, abs_tol)
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }

    fn from_rational(r: &Rational) -> Self {
        num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn parse_literal(token: &str) -> Result<Self, ParseScalarError> {
        if token.contains('/') {
            return Err(ParseScalarError::RationalNeedsExact(token.to_string()));
        }
        token
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseScalarError::Invalid(token.to_string()))
    }

    fn determinant(m: &Matrix<Self>) -> DetOutcome<Self> {
        DetOutcome {
            value: det::partial_pivot(m),
            max_bits: None,
        }
    }

    fn approx_eq(&self, other: &Self, rel_tol: f64, abs_tol: f64) -> bool {
        let diff = (self - other).abs();
        diff <= abs_tol.max(rel_tol * self.abs().max(other.abs()))
    }

    fn is_negligible(&self, rel: f64, scale: f64) -> bool {
        self.abs() <= rel * scale
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Magnitudes beyond binary64 range.
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn parse_literal(token: &str) -> Result<Self, ParseScalarError> {
        parse_rational(token)
    }

    fn determinant(m: &Matrix<Self>) -> DetOutcome<Self> {
        let (value, bits) = det::bareiss_rational(m);
        DetOutcome {
            value,
            max_bits: Some(bits),
        }
    }

    fn approx_eq(&self, other: &Self, _rel_tol: f64, _abs_tol: f64) -> bool {
        self == other
    }

    fn is_negligible(&self, _rel: f64, _scale: f64) -> bool {
        self.is_zero()
    }
}

fn parse_rational(token: &str) -> Result<Rational, ParseScalarError> {
    let invalid = || ParseScalarError::Invalid(token.to_string());
    let t = token.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| invalid())?;
        let den: BigInt = den.trim().parse().map_err(|_| invalid())?;
        if den.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(token.to_string()));
        }
        return Ok(Rational::new(num, den));
    }

    // Decimal literal: [sign] digits [. digits] [(e|E) [sign] digits]
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = t[pos + 1..].parse().map_err(|_| invalid())?;
            (&t[..pos], exp)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(invalid());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| invalid())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return Err(invalid());
    }
    let pow = num_traits::pow(BigInt::from(10), scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        Rational::from_integer(numer * pow)
    } else {
        Rational::new(numer, pow)
    })
}

/// Bit length of the largest numerator or denominator in `values`.
pub fn max_bits<'a>(values: impl IntoIterator<Item = &'a Rational>) -> u64 {
    values
        .into_iter()
        .map(|r| r.numer().bits().max(r.denom().bits()))
        .max()
        .unwrap_or(0)
}

/// Least common multiple of the denominators in `values`.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
