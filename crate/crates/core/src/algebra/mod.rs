//! Exact polynomial and rational-function arithmetic over `Q`, in one
//! variable `q` and in two variables `a`, `q`.

mod bilaurent;
mod biratfunc;
pub mod dense;
mod laurent;
mod ratfunc;

pub use bilaurent::{BiLaurent, ZBiLaurent};
pub use biratfunc::BiRatFunc;
pub use dense::ZLaurent;
pub use laurent::LaurentPoly;
pub use ratfunc::{normalize, RatFunc};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
