//! Exact quasi-polynomial formulae for restricted partition counts.
//!
//! The crate discovers closed forms for `p_S(n)` (partitions with parts drawn
//! from a multiset `S`), `p_m(n)` (partitions into at most `m` parts) and
//! `D_k(n)` (partitions whose Durfee square has side `k`). A formula is a sum
//! of quasi-polynomials fitted by undetermined coefficients against exact
//! series data, then checked against the generating function on a
//! determining set of points, so every emitted formula is proven.
//!
//! Independent evaluators live alongside: a coin-change dynamic program,
//! Euler's pentagonal recurrence, brute-force enumeration with Durfee
//! classification, and the Hardy–Ramanujan–Rademacher series in
//! arbitrary-precision fixed point.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `partitions-cli` crate.

#![no_std]

extern crate alloc;

pub mod cyclotomic;
pub mod discover;
pub mod error;
pub mod floor_form;
pub mod hrr;
pub mod linalg;
pub mod oracles;
pub mod partial_fractions;
pub mod poly;
pub mod quasipoly;
pub mod series;
pub mod store;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use poly::Polynomial;
pub use quasipoly::{QuasiPolynomial, QuasiPolynomialSum};

/// Exact, always-reduced fraction with a positive denominator.
pub type Rational = num_rational::BigRational;
