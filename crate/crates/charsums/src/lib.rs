//! Exact workbench for character sums to composite modulus.
//!
//! The crate builds Dirichlet characters mod arbitrary composite `q` with
//! exact root-of-unity values, computes short character sums and their
//! `2r`-th moments, counts solutions to congruences with Kloosterman
//! fractions and to multiplicative congruences, and carries the polynomial
//! machinery (Sylvester matrices, resultants, adjugates) needed to verify
//! every explicit-constant statement in this circle of ideas exactly. The
//! asymptotic statements, whose implied constants cannot be checked, are
//! evaluated with constant 1 and reported as ratios instead.
//!
//! See the `book/` directory for a guided tour; its code snippets compile
//! and run as doctests of this crate.

pub mod arithmetic;
pub mod characters;
pub mod congruences;
pub mod error;
pub mod fmt;
pub mod polynomials;
pub mod sums;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/short-sums.md")]
    mod short_sums {}
    #[doc = include_str!("../../../book/src/congruences.md")]
    mod congruences {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
