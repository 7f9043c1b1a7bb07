//! Trace quadratic forms on a finite-dimensional quotient algebra and the
//! signed swallowtail counts read off their signatures.
//!
//! For a weight `w`, the form `h ↦ t(w·h²)` (with `t` the trace of
//! multiplication on `A`) has signature `Σ sgn w(p)` over the real points of
//! the variety. Weights `1, g, u, u·g` give the forms Θ, Ψ, Φ₁, Φ₂.

mod count;
mod signature;

pub use count::{
    analyze, analyze_bounded, check_genericity, count_from, count_in_region, count_swallowtails,
    Analysis, CountError, CountOptions, CountReport, CountStatus, GenericityCheck, GenericityIdeal,
    RegionCounts, DEFAULT_MAX_RETRIES,
};
pub use signature::{char_poly_integer, exact_signature, SignatureResult};

use std::fmt;

use num_traits::Zero;

use crate::groebner::QuotientAlgebra;
use crate::linalg::RatMatrix;
use crate::par;
use crate::polycore::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceFormError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormLabel {
    Theta,
    Psi,
    Phi1,
    Phi2,
}

impl fmt::Display for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormLabel::Theta => "Theta",
            FormLabel::Psi => "Psi",
            FormLabel::Phi1 => "Phi1",
            FormLabel::Phi2 => "Phi2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    pub label: FormLabel,
    pub matrix: RatMatrix,
}

impl SymmetricForm {
    pub fn signature(&self) -> SignatureResult {
        exact_signature(&self.matrix).expect("trace forms are symmetric by construction")
    }
}

/// Precomputed trace data of `A`: the traces `t(bᵢ)` of the basis monomials
/// and the coordinates of all products `bⱼ·bₖ`.
pub struct TraceContext<'a> {
    qa: &'a QuotientAlgebra,
    traces: Vec<Rational>,
    products: Vec<Vec<Vec<Rational>>>,
}

impl<'a> TraceContext<'a> {
    pub fn new(qa: &'a QuotientAlgebra) -> Self {
        let products = qa.product_table();
        let dim = qa.dim();
        // t(bᵢ) = Σₖ [bᵢ·bₖ]ₖ
        let traces = (0..dim)
            .map(|i| (0..dim).fold(Rational::zero(), |acc, k| acc + &products[i][k][k]))
            .collect();
        TraceContext {
            qa,
            traces,
            products,
        }
    }

    pub fn algebra(&self) -> &QuotientAlgebra {
        self.qa
    }

    pub fn basis_traces(&self) -> &[Rational] {
        &self.traces
    }

    /// Trace of multiplication by the element with coordinates `v`.
    pub fn trace_of_coords(&self, v: &[Rational]) -> Rational {
        v.iter()
            .zip(&self.traces)
            .filter(|(a, _)| !a.is_zero())
            .fold(Rational::zero(), |acc, (a, t)| acc + a * t)
    }

    pub fn trace_of(&self, u: &Polynomial) -> Rational {
        self.trace_of_coords(&self.qa.coords_of(u))
    }

    /// The form `(j, k) ↦ t(w·bⱼ·bₖ)` for the weight with coordinates `w`.
    pub fn form_from_coords(&self, label: FormLabel, w: &[Rational]) -> SymmetricForm {
        let dim = self.qa.dim();
        let mw = self.qa.mult_matrix_of_coords(w);
        // r[i] = t(w·bᵢ)
        let r: Vec<Rational> = (0..dim)
            .map(|i| self.trace_of_coords(&mw.column(i)))
            .collect();
        let rows = par::map_range(dim, |j| {
            (0..dim)
                .map(|k| {
                    self.products[j][k]
                        .iter()
                        .zip(&r)
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect::<Vec<_>>()
        });
        SymmetricForm {
            label,
            matrix: RatMatrix::from_rows(rows),
        }
    }

    pub fn form(&self, label: FormLabel, weight: &Polynomial) -> SymmetricForm {
        self.form_from_coords(label, &self.qa.coords_of(weight))
    }
}

/// Trace of multiplication by `u` on `A`.
pub fn trace_of(u: &Polynomial, qa: &QuotientAlgebra) -> Rational {
    qa.mult_matrix(u).trace()
}

/// The trace form with the given weight.
pub fn build_form(weight: &Polynomial, qa: &QuotientAlgebra, label: FormLabel) -> SymmetricForm {
    TraceContext::new(qa).form(label, weight)
}
