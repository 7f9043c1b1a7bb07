//! Exact sparse polynomial arithmetic in `x, y, z` over ℚ.

mod monomial;
mod parse;
mod polynomial;
mod vector;

pub use monomial::{Monomial, Var};
pub use parse::{parse, ParseError};
pub(crate) use polynomial::rational_to_f64;
pub use polynomial::Polynomial;
pub use vector::{cross, det3, dot, gradient, minors2, PolyMap, PolyRow, PolyVector};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolycoreError {
    #[error("a matrix needs at least two rows to have 2x2 minors, got {rows}")]
    MalformedMatrix { rows: usize },
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
