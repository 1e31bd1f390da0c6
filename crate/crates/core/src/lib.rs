//! Exact verification of q-congruences for truncated basic hypergeometric
//! sums.
//!
//! The crate is layered bottom-up:
//!
//! - [`algebra`]: sparse Laurent polynomials and rational functions over
//!   arbitrary-precision rationals, in one variable (`q`) and two (`a`, `q`),
//!   plus dense integer kernels used by the heavy paths.
//! - [`cyclotomic`]: cyclotomic polynomials, `Φ_n`-adic valuations, and the
//!   quotient rings `Q[q]/Φ_n(q)^e`.
//! - [`qkit`]: q-shifted factorials and q-binomial coefficients.
//! - [`catalog`]: the registry of sum families, closed forms, and their
//!   congruence claims.
//! - [`verify`]: checkers that turn claims into reports.
//! - [`cli`]: campaign configuration, report records, and the subcommands
//!   behind the `qcong` binary.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod qkit;
pub mod verify;

pub use algebra::{BiLaurent, BiRatFunc, LaurentPoly, RatFunc, Rational};
pub use error::{Error, Result};
