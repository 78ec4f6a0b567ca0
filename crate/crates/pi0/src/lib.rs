//! Exact computation with path-component spaces.
//!
//! The central object is the planar compact set
//! `K = (C × [0,1]) ∪ (K_even × {0}) ∪ (K_odd × {1})`, where `C` is the
//! middle-third Cantor set and `K_odd`/`K_even` are the unions of the deleted
//! middle-third gaps of odd/even level. The path components of `K` are the
//! vertical Cantor fibers and the gap arcs, and collapsing each component to a
//! point yields a copy of the unit interval. Everything here is computed with
//! exact rational arithmetic, so membership, component identity, path
//! synthesis, and separation certificates are all decidable.
//!
//! Modules:
//!
//! - [`ternary`]: rationals in `[0,1]`, ternary expansions, Cantor-set
//!   classification, gap enumeration, and the Cantor staircase function.
//! - [`space_k`]: the space `K`, its components, the quotient `q_K`,
//!   piecewise-linear paths, separation witnesses, and fibers.
//! - [`approx`]: the cubical approximants `K_n`, their homology, grid traces
//!   of `K`, and Hausdorff-distance bounds.
//! - [`product`]: finite powers `K^d`, box regions `X ⊆ [0,1]^d`, and the
//!   pullback `Y = Q⁻¹(X)` realizing `X` as a path-component space.
//! - [`freegroup`]: free-group words over rational letters, Graev reduction,
//!   loop images, and the contraction family.
//! - [`render`]: SVG output for the approximants and related figures.

pub mod approx;
pub mod freegroup;
pub mod product;
pub mod render;
pub mod space_k;
pub mod ternary;

mod book;
mod error;
mod unionfind;

pub use error::Error;
