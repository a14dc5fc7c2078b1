//! Exact rationals and the two-point extension used for interval endpoints.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Arbitrary-precision fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn half() -> Rational {
    rat(1, 2)
}

pub(crate) fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) * half()
}

/// Parses `"p"`, `"-p"`, `"+p"` or `"p/q"` into a rational. Zero denominators
/// are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// A rational or one of the two infinite ends of the line.
///
/// Variant order gives the total order `-inf < q < +inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    /// Image under `t ↦ -t`.
    pub fn negate(&self) -> Self {
        match self {
            ExtendedRational::NegInf => ExtendedRational::PosInf,
            ExtendedRational::PosInf => ExtendedRational::NegInf,
            ExtendedRational::Finite(q) => ExtendedRational::Finite(-q),
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            ExtendedRational::NegInf => Ordering::Less,
            ExtendedRational::PosInf => Ordering::Greater,
            ExtendedRational::Finite(p) => p.cmp(q),
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(q: Rational) -> Self {
        ExtendedRational::Finite(q)
    }
}

impl PartialEq<Rational> for ExtendedRational {
    fn eq(&self, other: &Rational) -> bool {
        self.cmp_rational(other) == Ordering::Equal
    }
}

impl PartialOrd<Rational> for ExtendedRational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp_rational(other))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInf => f.write_str("-inf"),
            ExtendedRational::PosInf => f.write_str("+inf"),
            ExtendedRational::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// Error returned when a string is neither a rational nor an infinity token.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRationalError(pub alloc::string::String);

impl FromStr for ExtendedRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" | "-∞" | "−inf" | "−∞" => Ok(ExtendedRational::NegInf),
            "+inf" | "inf" | "+∞" | "∞" => Ok(ExtendedRational::PosInf),
            t => parse_rational(t)
                .map(ExtendedRational::Finite)
                .ok_or_else(|| ParseRationalError(t.into())),
        }
    }
}

pub(crate) fn is_positive(q: &Rational) -> bool {
    q > &Rational::zero()
}
