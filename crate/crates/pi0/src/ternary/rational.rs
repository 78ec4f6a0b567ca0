use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// A reduced fraction confined to the closed unit interval.
///
/// Every coordinate in this crate is an `ExactRational`. Restricting to
/// rationals keeps ternary expansions eventually periodic, so Cantor-set
/// classification and the staircase function are exact and total. Equality
/// and ordering are value equality; the internal representation is always in
/// lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Builds `numerator/denominator`, rejecting values outside `[0,1]`.
    pub fn new(numerator: u64, denominator: u64) -> Result<Self, Error> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_ratio(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))
    }

    /// Wraps an arbitrary rational, rejecting values outside `[0,1]`.
    pub fn from_ratio(ratio: BigRational) -> Result<Self, Error> {
        if ratio.is_negative() || ratio > BigRational::one() {
            return Err(Error::OutOfRange(ratio.to_string()));
        }
        Ok(ExactRational(ratio))
    }

    /// Wraps a rational already known to lie in `[0,1]`.
    pub(crate) fn from_ratio_unchecked(ratio: BigRational) -> Self {
        debug_assert!(
            !ratio.is_negative() && ratio <= BigRational::one(),
            "rational {ratio} escapes [0,1]"
        );
        ExactRational(ratio)
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    /// Nearest `f64`, for rendering only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn midpoint(a: &Self, b: &Self) -> Self {
        Self::from_ratio_unchecked((&a.0 + &b.0) / BigInt::from(2))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints "p/q", omitting "/q" when q = 1.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Hash for ExactRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Parses `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_err = || Error::Parse {
            input: s.to_string(),
            expected: "rational p/q",
        };
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| parse_err())?,
                BigInt::from_str(d.trim()).map_err(|_| parse_err())?,
            ),
            None => (
                BigInt::from_str(s.trim()).map_err(|_| parse_err())?,
                BigInt::one(),
            ),
        };
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::from_ratio(BigRational::new(numer, denom))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}
