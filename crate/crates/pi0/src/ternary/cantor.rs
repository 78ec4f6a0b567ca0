use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::expansion::{expand_radix, value_radix, TernaryExpansion};
use super::rational::ExactRational;
use crate::Error;

/// Parity of a gap level; odd-level gaps keep the top edge of `K`, even-level
/// gaps the bottom edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of_level(level: u32) -> Parity {
        if level % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

/// A deleted middle-third interval `(left, right)` of length `3⁻ˡᵉᵛᵉˡ`.
///
/// Both endpoints belong to the Cantor set and have terminating ternary
/// expansions; the open interval is disjoint from it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct CantorGap {
    level: u32,
    left: ExactRational,
    right: ExactRational,
    parity: Parity,
}

impl CantorGap {
    /// The gap deleted from the Cantor interval of the given level that
    /// starts at `base`: `(base + 3⁻ᵏ, base + 2·3⁻ᵏ)` with `k = level`.
    pub(crate) fn from_interval_base(level: u32, base: &BigRational) -> CantorGap {
        let third = BigRational::new(BigInt::one(), num::pow::pow(BigInt::from(3), level as usize));
        CantorGap {
            level,
            left: ExactRational::from_ratio_unchecked(base + &third),
            right: ExactRational::from_ratio_unchecked(base + &third + &third),
            parity: Parity::of_level(level),
        }
    }

    /// The gap whose Cantor interval is addressed by the digits of `prefix`
    /// (all in `{0,2}`); the gap level is `prefix.len() + 1`.
    pub fn from_prefix(prefix: &[u8]) -> CantorGap {
        debug_assert!(prefix.iter().all(|&d| d == 0 || d == 2));
        let base = value_radix(prefix, &[], 3);
        CantorGap::from_interval_base(prefix.len() as u32 + 1, base.ratio())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn left(&self) -> &ExactRational {
        &self.left
    }

    pub fn right(&self) -> &ExactRational {
        &self.right
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn midpoint(&self) -> ExactRational {
        ExactRational::midpoint(&self.left, &self.right)
    }

    /// True on the open interval `(left, right)`.
    pub fn contains_open(&self, x: &ExactRational) -> bool {
        *x > self.left && *x < self.right
    }

    /// True on the closed interval `[left, right]`.
    pub fn closure_contains(&self, x: &ExactRational) -> bool {
        *x >= self.left && *x <= self.right
    }
}

impl fmt::Display for CantorGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) level {} {}",
            self.left, self.right, self.level, self.parity
        )
    }
}

/// Validating mirror for deserialization.
#[derive(Deserialize)]
struct CantorGapRaw {
    level: u32,
    left: ExactRational,
    right: ExactRational,
    parity: Parity,
}

impl TryFrom<CantorGapRaw> for CantorGap {
    type Error = Error;

    fn try_from(raw: CantorGapRaw) -> Result<Self, Error> {
        let third = BigRational::new(
            BigInt::one(),
            num::pow::pow(BigInt::from(3), raw.level as usize),
        );
        let base = raw.left.ratio() - &third;
        if base.is_negative() {
            return Err(Error::Parse {
                input: raw.left.to_string(),
                expected: "gap left endpoint",
            });
        }
        let gap = CantorGap::from_interval_base(raw.level, &base);
        if gap.left != raw.left || gap.right != raw.right || gap.parity != raw.parity {
            return Err(Error::Parse {
                input: format!("({}, {}) level {}", raw.left, raw.right, raw.level),
                expected: "a deleted middle-third interval",
            });
        }
        match classify(&gap.left) {
            CantorClass::LeftEndpoint(g) if g == gap => Ok(gap),
            _ => Err(Error::Parse {
                input: format!("({}, {}) level {}", raw.left, raw.right, raw.level),
                expected: "a deleted middle-third interval",
            }),
        }
    }
}

impl<'de> Deserialize<'de> for CantorGap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CantorGapRaw::deserialize(deserializer)?;
        CantorGap::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// Position of a unit-interval rational relative to the Cantor set.
///
/// Exactly one variant applies: interior Cantor points bound no gap, the two
/// endpoint variants carry the unique gap they bound, and `InGap` carries the
/// unique gap whose open interval contains the point. The boundary values 0
/// and 1 classify as `InteriorCantor` since no deleted interval has them as
/// an endpoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CantorClass {
    InteriorCantor,
    LeftEndpoint(CantorGap),
    RightEndpoint(CantorGap),
    InGap(CantorGap),
}

impl CantorClass {
    pub fn gap(&self) -> Option<&CantorGap> {
        match self {
            CantorClass::InteriorCantor => None,
            CantorClass::LeftEndpoint(g)
            | CantorClass::RightEndpoint(g)
            | CantorClass::InGap(g) => Some(g),
        }
    }

    pub fn is_in_gap(&self) -> bool {
        matches!(self, CantorClass::InGap(_))
    }
}

/// Classifies `x` against the Cantor set via its canonical ternary digits.
pub fn classify(x: &ExactRational) -> CantorClass {
    let exp = TernaryExpansion::of(x);
    match exp.first_one() {
        None => {
            if exp.is_terminating() && !exp.preperiod().is_empty() {
                // 0.t₁…tₘ with digits in {0,2} and tₘ = 2: the right endpoint
                // of the level-m gap.
                let prefix = &exp.preperiod()[..exp.preperiod().len() - 1];
                let gap = CantorGap::from_prefix(prefix);
                debug_assert_eq!(&gap.right, x);
                CantorClass::RightEndpoint(gap)
            } else {
                // 0, 1, and every rational with a purely {0,2} infinite
                // stream bound no gap.
                CantorClass::InteriorCantor
            }
        }
        Some(k) => {
            let prefix: Vec<u8> = (1..k).map(|i| exp.digit(i)).collect();
            let gap = CantorGap::from_prefix(&prefix);
            if exp.is_terminating() && k == exp.preperiod().len() {
                // The 1 is the final digit: x = base + 3⁻ᵏ, the left endpoint.
                debug_assert_eq!(&gap.left, x);
                CantorClass::LeftEndpoint(gap)
            } else {
                debug_assert!(gap.contains_open(x));
                CantorClass::InGap(gap)
            }
        }
    }
}

/// Digit criterion for Cantor-set membership: some expansion of `x` avoids
/// the digit 1. Independent of [`classify`], which navigates gap structure.
pub fn in_cantor_set(x: &ExactRational) -> bool {
    let no_ones =
        |e: &TernaryExpansion| e.preperiod().iter().chain(e.period()).all(|&d| d != 1);
    let exp = TernaryExpansion::of(x);
    no_ones(&exp) || exp.alternate().map_or(false, |alt| no_ones(&alt))
}

/// The Cantor–Lebesgue staircase function.
///
/// Monotone from `[0,1]` onto `[0,1]`, constant exactly on gap closures, and
/// injective on the non-endpoint Cantor points. On an all-`{0,2}` expansion it
/// halves each ternary digit and reads the result in binary; inside or on a
/// gap of level `k` with prefix digits `t` the value is
/// `Σᵢ (tᵢ/2)·2⁻ⁱ + 2⁻ᵏ`.
pub fn cantor_function(x: &ExactRational) -> ExactRational {
    let exp = TernaryExpansion::of(x);
    match exp.first_one() {
        Some(k) => {
            let mut bits: Vec<u8> = (1..k).map(|i| exp.digit(i) / 2).collect();
            bits.push(1);
            value_radix(&bits, &[], 2)
        }
        None => {
            let prep: Vec<u8> = exp.preperiod().iter().map(|d| d / 2).collect();
            let period: Vec<u8> = exp.period().iter().map(|d| d / 2).collect();
            value_radix(&prep, &period, 2)
        }
    }
}

/// Parity filter for [`gaps_between`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GapFilter {
    Odd,
    Even,
    Any,
}

impl GapFilter {
    fn admits(&self, parity: Parity) -> bool {
        match self {
            GapFilter::Odd => parity == Parity::Odd,
            GapFilter::Even => parity == Parity::Even,
            GapFilter::Any => true,
        }
    }
}

/// Up to `count` gaps lying strictly between `x` and `y` (`x < left` and
/// `right < y`), filtered by parity and ordered by increasing level, then
/// position.
///
/// When `(x, y)` sits inside a single gap closure no gap fits strictly
/// between and the result is empty; in every other case gaps of both parities
/// exist in abundance and the full `count` is returned.
pub fn gaps_between(
    x: &ExactRational,
    y: &ExactRational,
    filter: GapFilter,
    count: usize,
) -> Result<Vec<CantorGap>, Error> {
    if x >= y {
        return Err(Error::InvalidOrder);
    }
    let mut found = Vec::new();
    if count == 0 {
        return Ok(found);
    }
    // Degenerate case: (x, y) inside one gap closure.
    match classify(x) {
        CantorClass::LeftEndpoint(g) | CantorClass::InGap(g) if *y <= *g.right() => {
            return Ok(found);
        }
        _ => {}
    }

    let x_r = x.ratio();
    let y_r = y.ratio();
    // Breadth-first over Cantor intervals that overlap (x, y), so gaps arrive
    // in (level, position) order. The depth cap is generous: the first
    // admissible gap of either parity appears within O(log₃ denominator)
    // levels of the input endpoints.
    let depth_cap = 2 * (x_r.denom().bits() + y_r.denom().bits()) as usize + 16;
    let mut queue: Vec<BigRational> = vec![BigRational::zero()];
    let mut width = BigRational::one();
    for depth in 0..depth_cap {
        let child_width = &width / BigInt::from(3);
        let level = depth as u32 + 1;
        let admit = filter.admits(Parity::of_level(level));
        let mut next = Vec::new();
        for base in &queue {
            let a = base + &child_width;
            let b = &a + &child_width;
            if admit && a > *x_r && b < *y_r {
                found.push(CantorGap::from_interval_base(level, base));
                if found.len() == count {
                    return Ok(found);
                }
            }
            for child in [base.clone(), b] {
                if &child < y_r && &child + &child_width > *x_r {
                    next.push(child);
                }
            }
        }
        if next.is_empty() {
            return Ok(found);
        }
        queue = next;
        width = child_width;
    }
    debug_assert!(false, "gap search exhausted its depth cap");
    Ok(found)
}

/// Every gap of level at most `max_level`, ordered by level then position.
///
/// There are `2^(k-1)` gaps of level `k`, so the result has `2^max_level − 1`
/// entries.
pub fn all_gaps_up_to(max_level: u32) -> Vec<CantorGap> {
    let mut gaps = Vec::new();
    let mut bases = vec![BigRational::zero()];
    for level in 1..=max_level {
        let third = BigRational::new(
            BigInt::one(),
            num::pow::pow(BigInt::from(3), level as usize),
        );
        let mut next = Vec::with_capacity(bases.len() * 2);
        for base in &bases {
            gaps.push(CantorGap::from_interval_base(level, base));
            next.push(base.clone());
            next.push(base + &third + &third);
        }
        bases = next;
    }
    gaps
}

/// Preimage of a value under the staircase function: either the unique
/// non-endpoint Cantor point mapping there, or the gap whose whole closure is
/// collapsed onto it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CantorPreimage {
    Point(ExactRational),
    Gap(CantorGap),
}

/// Inverts the staircase by digit transport: binary digits of `t` double into
/// ternary digits. Dyadic `t` in `(0,1)` arise exactly from collapsed gap
/// closures; every other rational has a one-point preimage.
pub fn cantor_function_preimage(t: &ExactRational) -> CantorPreimage {
    let (prep, period) = expand_radix(t, 2);
    if period.is_empty() && !prep.is_empty() {
        debug_assert_eq!(*prep.last().unwrap(), 1);
        let prefix: Vec<u8> = prep[..prep.len() - 1].iter().map(|d| d * 2).collect();
        CantorPreimage::Gap(CantorGap::from_prefix(&prefix))
    } else {
        let tern_prep: Vec<u8> = prep.iter().map(|d| d * 2).collect();
        let tern_period: Vec<u8> = period.iter().map(|d| d * 2).collect();
        CantorPreimage::Point(value_radix(&tern_prep, &tern_period, 3))
    }
}
