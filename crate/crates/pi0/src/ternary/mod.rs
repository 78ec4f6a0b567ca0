//! Exact arithmetic on unit-interval rationals and their ternary structure:
//! expansions, Cantor-set classification, gap enumeration, and the staircase
//! function that collapses gap closures.

mod cantor;
mod expansion;
mod rational;

pub use cantor::{
    all_gaps_up_to, cantor_function, cantor_function_preimage, classify, gaps_between,
    in_cantor_set, CantorClass, CantorGap, CantorPreimage, GapFilter, Parity,
};
pub use expansion::TernaryExpansion;
pub use rational::ExactRational;

/// The canonical ternary expansion of `x`; alias for [`TernaryExpansion::of`].
pub fn ternary_expand(x: &ExactRational) -> TernaryExpansion {
    TernaryExpansion::of(x)
}
