//! Exact counting and classification of swallowtail points of polynomial
//! maps `ℝ³ → ℝ³`.
//!
//! The pipeline derives the critical-locus polynomials of a map
//! ([`singularity`]), certifies genericity and builds the quotient algebra of
//! the swallowtail ideal ([`groebner`]), and reads signed counts off
//! signatures of trace forms ([`traceforms`]). [`numoracle`] re-derives the
//! same counts numerically as an independent check.

pub mod groebner;
pub mod linalg;
pub mod numoracle;
pub mod par;
pub mod polycore;
pub mod singularity;
pub mod traceforms;

pub use groebner::{
    buchberger, buchberger_bounded, quotient_basis, Budget, GroebnerBasis, MonomialOrder, Quotient,
    QuotientAlgebra,
};
pub use polycore::{parse, Monomial, PolyMap, PolyVector, Polynomial, Rational, Var};
