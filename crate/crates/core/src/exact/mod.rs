//! Exact arithmetic substrate: rationals, univariate polynomials and
//! rational functions, factored products of linear forms, truncated series.

mod factor;
mod poly;
mod ratfunc;
mod series;
mod window;

pub use factor::FactorProduct;
pub use poly::UPoly;
pub use ratfunc::URatFunc;
pub use series::{pow_one_minus_q, truncated_series_mul};
pub use window::LaurentWindow;

use thiserror::Error;

/// Arbitrary-precision rational number, kept in lowest terms with a positive
/// denominator. Serializes as `p/q` (or just `n` when the denominator is 1).
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the exact fraction `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("slope {slope} hits a pole: weight ({a},{b}) specializes to zero")]
    SlopeOnPole { a: i64, b: i64, slope: Rat },
    #[error("pole at zero: numerator order {num_ord} < denominator order {den_ord}")]
    PoleAtZero { num_ord: usize, den_ord: usize },
}
