//! Gröbner bases of ideals in ℚ[x, y, z] and their finite-dimensional quotients.

mod buchberger;
mod order;
mod quotient;

pub use order::{MonomialOrder, UnknownOrder};
pub use quotient::{quotient_basis, Quotient, QuotientAlgebra};

pub use buchberger::Budget;

use buchberger::{reduce_full, reduced_basis, s_poly_reduces_to_zero, SortedPoly};

use crate::polycore::{Monomial, Polynomial};

/// A reduced Gröbner basis: monic, interreduced, sorted by increasing
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<SortedPoly>,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Zero generators are ignored; an all-zero input yields the empty basis of
/// the zero ideal.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        order,
        polys: reduced_basis(gens, order, None).expect("unbounded"),
    }
}

/// As [`buchberger`], but gives up with `None` once `budget` is exhausted.
pub fn buchberger_bounded(
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: &Budget,
) -> Option<GroebnerBasis> {
    reduced_basis(gens, order, Some(budget)).map(|polys| GroebnerBasis { order, polys })
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.polys.iter().map(SortedPoly::to_poly).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(SortedPoly::lm).collect()
    }

    /// True iff the ideal is the whole ring.
    pub fn contains_one(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    /// Unique remainder of `p` modulo the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.normal_form_with(p, |c| c[0])
    }

    /// Normal form where `choose` selects which applicable reducer to use at
    /// every step. The result does not depend on the choices.
    pub fn normal_form_with<F>(&self, p: &Polynomial, choose: F) -> Polynomial
    where
        F: FnMut(&[usize]) -> usize,
    {
        let refs: Vec<&SortedPoly> = self.polys.iter().collect();
        reduce_full(
            SortedPoly::from_poly(p, self.order),
            &refs,
            self.order,
            choose,
        )
        .to_poly()
    }

    pub fn is_member(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// True when the monomial lies outside the leading-term ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.polys.iter().any(|g| g.lm().divides(m))
    }

    /// Checks the Buchberger criterion: every S-polynomial of basis pairs
    /// reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let refs: Vec<&SortedPoly> = self.polys.iter().collect();
        (0..self.polys.len()).all(|i| {
            (i + 1..self.polys.len())
                .all(|j| s_poly_reduces_to_zero(&self.polys[i], &self.polys[j], &refs, self.order))
        })
    }

    /// Checks that the basis is reduced: monic, and no term of any element is
    /// divisible by another element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.polys.iter().enumerate().all(|(i, g)| {
            num_traits::One::is_one(&g.lead().coef)
                && g.terms.iter().all(|t| {
                    self.polys
                        .iter()
                        .enumerate()
                        .all(|(j, h)| j == i || !h.lm().divides(&t.mono))
                })
        })
    }
}
