#![allow(dead_code)]

use proptest::prelude::*;
use swt_core::polycore::{ratio, Monomial, Polynomial, Rational};

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

/// Polynomials of total degree at most `max_deg` with up to `max_terms` terms.
pub fn polynomial(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        ((0..=max_deg, 0..=max_deg, 0..=max_deg), small_rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero();
        for ((a, b, c), coef) in terms {
            if a + b + c <= max_deg {
                p.add_term(Monomial::new(a, b, c), coef);
            }
        }
        p
    })
}

pub fn point() -> impl Strategy<Value = [Rational; 3]> {
    [small_rational(), small_rational(), small_rational()]
}

/// Generators `v^k + (lower-degree tail)` for each variable, plus an optional
/// extra generator. The ideal is zero-dimensional in every degree order.
pub fn zero_dim_ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    (
        [1u32..=2, 1u32..=2, 1u32..=2],
        [polynomial(1, 3), polynomial(1, 3), polynomial(1, 3)],
        prop::option::of(polynomial(2, 3)),
    )
        .prop_map(|(degs, tails, extra)| {
            let mut gens: Vec<Polynomial> = (0..3)
                .map(|i| {
                    let mut e = [0u32; 3];
                    e[i] = degs[i] + 1;
                    &Polynomial::term(ratio(1, 1), Monomial::new(e[0], e[1], e[2])) + &tails[i]
                })
                .collect();
            gens.extend(extra);
            gens
        })
}
