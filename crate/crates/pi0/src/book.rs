//! Runs the guide's code snippets as doctests, keeping the book honest.
//! mdBook itself cannot test snippets against this crate, so each chapter is
//! attached here as item documentation and `cargo test --doc` picks the code
//! blocks up.
#![cfg(doctest)]

#[doc = include_str!("../../../book/src/rationals-and-the-cantor-set.md")]
pub struct RationalsAndTheCantorSet;

#[doc = include_str!("../../../book/src/the-space-k.md")]
pub struct TheSpaceK;

#[doc = include_str!("../../../book/src/approximants-and-homology.md")]
pub struct ApproximantsAndHomology;

#[doc = include_str!("../../../book/src/products-and-pullbacks.md")]
pub struct ProductsAndPullbacks;

#[doc = include_str!("../../../book/src/free-group-words.md")]
pub struct FreeGroupWords;
