//! Exact partial-fraction decompositions of rational functions built from
//! shifted factorials, Bell-polynomial coefficients on generalized harmonic
//! numbers, and exact verification of the harmonic number identities they
//! imply.
//!
//! Every quantity is an exact [`Rational`]; there is no floating point
//! anywhere in the crate. The decomposition formulas in [`pfd_engine`] are
//! checked against an independent linear-algebra oracle, and the identities
//! in [`identities`] are evaluated by direct summation.

pub mod bell_coeffs;
pub mod cli;

pub mod error;
pub mod exact_arith;
pub mod harmonic;
pub mod identities;

pub mod partitions;
pub mod pfd_engine;
pub mod sweep;
pub mod symbolic;




pub use error::{Error, Result};
pub use exact_arith::{binomial, factorial, rising_factorial, Integer, Rational};
