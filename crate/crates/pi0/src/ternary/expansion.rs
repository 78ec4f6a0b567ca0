use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, ToPrimitive, Zero};

use super::rational::ExactRational;
use crate::Error;

/// Eventually periodic base-3 digit expansion of a rational in `[0,1]`.
///
/// The canonical form is the one produced by long division: it terminates
/// whenever a terminating expansion exists, so it never ends in an all-2 tail
/// (the single exception is the value 1, whose only digit stream is `0.(2)`).
/// The non-canonical twin of a terminating expansion is available through
/// [`TernaryExpansion::alternate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TernaryExpansion {
    preperiod: Vec<u8>,
    period: Vec<u8>,
}

/// Long division of `x` in the given radix. Returns `(preperiod, period)`
/// with minimal preperiod and minimal period; the period is empty exactly
/// when the expansion terminates.
pub(crate) fn expand_radix(x: &ExactRational, radix: u8) -> (Vec<u8>, Vec<u8>) {
    if x.is_one() {
        return (Vec::new(), vec![radix - 1]);
    }
    let denom = x.ratio().denom().clone();
    let radix_big = BigInt::from(radix);
    let mut digits: Vec<u8> = Vec::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut remainder = x.ratio().numer().clone();
    loop {
        if remainder.is_zero() {
            return (digits, Vec::new());
        }
        if let Some(&start) = seen.get(&remainder) {
            let period = digits.split_off(start);
            return (digits, period);
        }
        seen.insert(remainder.clone(), digits.len());
        let (digit, rest) = (remainder * &radix_big).div_rem(&denom);
        digits.push(digit.to_u8().expect("digit below radix"));
        remainder = rest;
    }
}

/// Evaluates a digit stream back to the rational it denotes.
pub(crate) fn value_radix(preperiod: &[u8], period: &[u8], radix: u8) -> ExactRational {
    let radix_big = BigInt::from(radix);
    let fold = |digits: &[u8]| {
        digits.iter().fold(BigInt::zero(), |acc, &d| {
            acc * &radix_big + BigInt::from(d)
        })
    };
    let mut numer = fold(preperiod);
    let mut denom = num::pow::pow(radix_big.clone(), preperiod.len());
    if !period.is_empty() {
        let cycle = num::pow::pow(radix_big.clone(), period.len()) - BigInt::one();
        numer = numer * &cycle + fold(period);
        denom *= cycle;
    }
    ExactRational::from_ratio_unchecked(BigRational::new(numer, denom))
}

impl TernaryExpansion {
    /// The canonical expansion of `x`.
    pub fn of(x: &ExactRational) -> Self {
        let (preperiod, period) = expand_radix(x, 3);
        TernaryExpansion { preperiod, period }
    }

    /// Builds an expansion from raw digits, normalizing to canonical form.
    pub fn from_digits(preperiod: Vec<u8>, period: Vec<u8>) -> Result<Self, Error> {
        if preperiod.iter().chain(&period).any(|&d| d > 2) {
            return Err(Error::Parse {
                input: format!("{preperiod:?}({period:?})"),
                expected: "ternary digits 0..=2",
            });
        }
        Ok(Self::of(&value_radix(&preperiod, &period, 3)))
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    /// The digit at 1-based position `i` after the radix point.
    pub fn digit(&self, i: usize) -> u8 {
        debug_assert!(i >= 1);
        let idx = i - 1;
        if idx < self.preperiod.len() {
            self.preperiod[idx]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(idx - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Re-evaluates the digits back to the rational they denote.
    pub fn value(&self) -> ExactRational {
        value_radix(&self.preperiod, &self.period, 3)
    }

    /// The other digit stream for the same value, when one exists.
    ///
    /// A nonzero terminating expansion `0.d₁…dₘ` also reads as
    /// `0.d₁…(dₘ−1)(2)`; all other values have a unique stream.
    pub fn alternate(&self) -> Option<TernaryExpansion> {
        if !self.period.is_empty() || self.preperiod.is_empty() {
            return None;
        }
        let mut preperiod = self.preperiod.clone();
        let last = preperiod.last_mut().expect("nonempty");
        debug_assert!(*last >= 1, "canonical terminating form has no trailing zero");
        *last -= 1;
        Some(TernaryExpansion {
            preperiod,
            period: vec![2],
        })
    }

    /// 1-based position of the first digit 1, if any digit equals 1.
    pub(crate) fn first_one(&self) -> Option<usize> {
        if let Some(i) = self.preperiod.iter().position(|&d| d == 1) {
            return Some(i + 1);
        }
        self.period
            .iter()
            .position(|&d| d == 1)
            .map(|i| self.preperiod.len() + i + 1)
    }
}

impl fmt::Display for TernaryExpansion {
    /// Formats as `0.d₁d₂…(period)`; the value zero prints as `0.0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.is_empty() && self.period.is_empty() {
            return write!(f, "0.0");
        }
        write!(f, "0.")?;
        for d in &self.preperiod {
            write!(f, "{d}")?;
        }
        if !self.period.is_empty() {
            write!(f, "(")?;
            for d in &self.period {
                write!(f, "{d}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for TernaryExpansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_err = || Error::Parse {
            input: s.to_string(),
            expected: "ternary expansion 0.d...(p)",
        };
        let body = s.strip_prefix("0.").ok_or_else(parse_err)?;
        let to_digits = |part: &str| -> Result<Vec<u8>, Error> {
            part.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    '2' => Ok(2),
                    _ => Err(parse_err()),
                })
                .collect()
        };
        let (prep_part, period_part) = match body.split_once('(') {
            Some((prep, rest)) => {
                let period = rest.strip_suffix(')').ok_or_else(parse_err)?;
                if period.is_empty() {
                    return Err(parse_err());
                }
                (prep, period)
            }
            None => (body, ""),
        };
        Self::from_digits(to_digits(prep_part)?, to_digits(period_part)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(n: u64, d: u64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    /// Independent digit oracle: dᵢ = ⌊3ⁱx⌋ mod 3 for x < 1.
    fn digit_oracle(x: &ExactRational, i: usize) -> u8 {
        let scaled = x.ratio() * num::pow::pow(BigInt::from(3), i);
        (scaled.floor().to_integer() % BigInt::from(3))
            .to_u8()
            .unwrap()
    }

    #[test]
    fn zero_expands_to_all_zeros() {
        let exp = TernaryExpansion::of(&ExactRational::zero());
        assert!(exp.preperiod().is_empty());
        assert!(exp.period().is_empty());
        assert_eq!(exp.digit(1), 0);
        assert_eq!(exp.digit(7), 0);
    }

    #[test]
    fn one_third_terminates_with_periodic_twin() {
        let exp = TernaryExpansion::of(&rational(1, 3));
        assert_eq!(exp.preperiod(), &[1]);
        assert!(exp.period().is_empty());
        let alt = exp.alternate().unwrap();
        assert_eq!(alt.preperiod(), &[0]);
        assert_eq!(alt.period(), &[2]);
        assert_eq!(alt.value(), rational(1, 3));
    }

    #[test]
    fn one_quarter_is_purely_periodic() {
        let exp = TernaryExpansion::of(&rational(1, 4));
        assert!(exp.preperiod().is_empty());
        assert_eq!(exp.period(), &[0, 2]);
        assert!(exp.alternate().is_none());
    }

    #[test]
    fn one_is_the_all_twos_stream() {
        let exp = TernaryExpansion::of(&ExactRational::one());
        assert!(exp.preperiod().is_empty());
        assert_eq!(exp.period(), &[2]);
        assert_eq!(exp.value(), ExactRational::one());
        assert!(exp.alternate().is_none());
    }

    #[test]
    fn digits_match_floor_oracle() {
        for d in 1..40u64 {
            for n in 0..d {
                let x = rational(n, d);
                let exp = TernaryExpansion::of(&x);
                for i in 1..=30 {
                    assert_eq!(
                        exp.digit(i),
                        digit_oracle(&x, i),
                        "digit {i} of {n}/{d}"
                    );
                }
            }
        }
    }

    #[test]
    fn reevaluation_reproduces_the_input() {
        for d in 1..60u64 {
            for n in 0..=d {
                let x = rational(n, d);
                assert_eq!(TernaryExpansion::of(&x).value(), x);
            }
        }
    }

    #[test]
    fn normalization_rewrites_trailing_twos() {
        // 0.0(2) = 0.1
        let exp = TernaryExpansion::from_digits(vec![0], vec![2]).unwrap();
        assert_eq!(exp.preperiod(), &[1]);
        assert!(exp.period().is_empty());
        // trailing zeros of a terminating stream drop
        let exp = TernaryExpansion::from_digits(vec![2, 0, 0], vec![]).unwrap();
        assert_eq!(exp.preperiod(), &[2]);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for (s, n, d) in [
            ("0.1", 1u64, 3u64),
            ("0.(02)", 1, 4),
            ("0.0(2)", 1, 3),
            ("0.(2)", 1, 1),
            ("0.0", 0, 1),
        ] {
            let parsed: TernaryExpansion = s.parse().unwrap();
            assert_eq!(parsed.value(), rational(n, d), "{s}");
        }
        let exp = TernaryExpansion::of(&rational(1, 4));
        assert_eq!(exp.to_string(), "0.(02)");
        let back: TernaryExpansion = exp.to_string().parse().unwrap();
        assert_eq!(back, exp);
        assert!("1.2".parse::<TernaryExpansion>().is_err());
        assert!("0.3".parse::<TernaryExpansion>().is_err());
        assert!("0.1(".parse::<TernaryExpansion>().is_err());
    }
}
