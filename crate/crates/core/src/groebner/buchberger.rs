use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::MonomialOrder;
use crate::polycore::{Monomial, Polynomial, Rational};

/// Work limit for [`super::buchberger_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// S-pairs processed before giving up.
    pub max_pairs: usize,
    /// Bit size of `numerator` plus `denominator` allowed in any new basis element.
    pub max_coefficient_bits: u64,
}

/// A term carrying its precomputed order key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub key: u64,
    pub mono: Monomial,
    pub coef: Rational,
}

/// Polynomial with terms sorted by decreasing order key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SortedPoly {
    pub terms: Vec<Term>,
}

impl SortedPoly {
    pub fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: order.key(m),
                mono: *m,
                coef: c.clone(),
            })
            .collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.key));
        SortedPoly { terms }
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|t| (t.mono, t.coef.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn lm(&self) -> Monomial {
        self.terms[0].mono
    }

    pub fn make_monic(&mut self) {
        if let Some(first) = self.terms.first() {
            if first.coef.is_one() {
                return;
            }
            let inv = first.coef.recip();
            for t in &mut self.terms {
                t.coef *= &inv;
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }
}

/// Accumulator keyed by order key; the last entry is the leading term.
struct Workspace {
    order: MonomialOrder,
    map: BTreeMap<u64, (Monomial, Rational)>,
}

impl Workspace {
    fn new(p: SortedPoly, order: MonomialOrder) -> Self {
        Workspace {
            order,
            map: p
                .terms
                .into_iter()
                .map(|t| (t.key, (t.mono, t.coef)))
                .collect(),
        }
    }

    /// `self -= c · q · g`, skipping the leading term of the monic `g`, which
    /// is assumed to cancel exactly.
    fn sub_multiple_tail(&mut self, c: &Rational, q: &Monomial, g: &SortedPoly) {
        for t in &g.terms[1..] {
            let m = t.mono.mul(q);
            let key = self.order.key(&m);
            let delta = c * &t.coef;
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((m, -delta));
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    e.get_mut().1 -= delta;
                    if e.get().1.is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }
}

/// Full reduction of `p` modulo the monic polynomials in `basis`.
///
/// `choose` picks one reducer among the indices whose leading monomial divides
/// the current term; passing `|c| c[0]` gives the deterministic reduction.
pub(crate) fn reduce_full<F>(
    p: SortedPoly,
    basis: &[&SortedPoly],
    order: MonomialOrder,
    mut choose: F,
) -> SortedPoly
where
    F: FnMut(&[usize]) -> usize,
{
    let mut ws = Workspace::new(p, order);
    let mut rem = Vec::new();
    let mut candidates = Vec::new();
    while let Some((key, (mono, coef))) = ws.map.pop_last() {
        candidates.clear();
        candidates.extend(
            basis
                .iter()
                .enumerate()
                .filter(|(_, g)| g.lm().divides(&mono))
                .map(|(i, _)| i),
        );
        if candidates.is_empty() {
            rem.push(Term { key, mono, coef });
            continue;
        }
        let g = basis[choose(&candidates)];
        let q = g.lm().quotient_of(&mono).expect("divisibility checked");
        ws.sub_multiple_tail(&coef, &q, g);
    }
    SortedPoly { terms: rem }
}

fn s_polynomial(a: &SortedPoly, b: &SortedPoly, order: MonomialOrder) -> SortedPoly {
    let lcm = a.lm().lcm(&b.lm());
    let qa = a.lm().quotient_of(&lcm).expect("lcm");
    let qb = b.lm().quotient_of(&lcm).expect("lcm");
    let mut ws = Workspace {
        order,
        map: BTreeMap::new(),
    };
    // both monic: S = qa·a − qb·b, leading terms cancel
    let neg_one = -Rational::one();
    ws.sub_multiple_tail(&neg_one, &qa, a);
    ws.sub_multiple_tail(&Rational::one(), &qb, b);
    let mut terms: Vec<Term> = ws
        .map
        .into_iter()
        .map(|(key, (mono, coef))| Term { key, mono, coef })
        .collect();
    terms.reverse();
    SortedPoly { terms }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: u64,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<SortedPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn active_refs(&self) -> Vec<&SortedPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer–Möller installation of a new monic basis element.
    fn update(&mut self, h: SortedPoly) {
        let lh = h.lm();
        let hi = self.polys.len();
        let order = self.order;
        let make = |i: usize, lm: Monomial| {
            let lcm = lm.lcm(&lh);
            Pair {
                i,
                j: hi,
                lcm,
                key: order.key(&lcm),
            }
        };

        let mut c: Vec<(Pair, bool)> = (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| {
                let lm = self.polys[i].lm();
                (make(i, lm), lm.is_coprime(&lh))
            })
            .collect();

        // chain criterion among the new pairs
        let mut d: Vec<(Pair, bool)> = Vec::new();
        while let Some((p, coprime)) = c.pop() {
            let dominated = c.iter().chain(d.iter()).any(|(q, _)| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push((p, coprime));
            }
        }
        // product criterion
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|(_, cp)| !cp)
            .map(|(p, _)| p)
            .collect();

        // chain criterion on old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lm().lcm(&lh);
            let lj = polys[p.j].lm().lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(e);

        for i in 0..self.polys.len() {
            if self.active[i] && lh.divides(&self.polys[i].lm()) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
        self.autoreduce_with(hi);
    }

    /// Keeps the active set interreduced: removes from every other active
    /// element the terms divisible by the leading monomial of `polys[hi]`.
    fn autoreduce_with(&mut self, hi: usize) {
        let lh = self.polys[hi].lm();
        for i in 0..hi {
            if !self.active[i] || !self.polys[i].terms[1..].iter().any(|t| lh.divides(&t.mono)) {
                continue;
            }
            let lead = self.polys[i].terms[0].clone();
            let tail = SortedPoly {
                terms: self.polys[i].terms[1..].to_vec(),
            };
            let reducers: Vec<&SortedPoly> = self
                .polys
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i && self.active[*j])
                .map(|(_, p)| p)
                .collect();
            let mut r = reduce_full(tail, &reducers, self.order, |c| c[0]);
            r.terms.insert(0, lead);
            self.polys[i] = r;
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        // normal selection: smallest lcm, ties broken by index for determinism
        let (idx, _) = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.key, p.j, p.i))?;
        Some(self.pairs.swap_remove(idx))
    }
}

fn coefficient_bits(p: &SortedPoly) -> u64 {
    p.terms
        .iter()
        .map(|t| t.coef.numer().bits() + t.coef.denom().bits())
        .max()
        .unwrap_or(0)
}

/// Reduced Gröbner basis as monic sorted polynomials, ascending by leading
/// monomial; `None` when the budget runs out.
pub(crate) fn reduced_basis(
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: Option<&Budget>,
) -> Option<Vec<SortedPoly>> {
    let mut engine = Engine {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let one = || {
        vec![SortedPoly {
            terms: vec![Term {
                key: order.key(&Monomial::ONE),
                mono: Monomial::ONE,
                coef: Rational::one(),
            }],
        }]
    };

    let mut inputs: Vec<SortedPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, order))
        .collect();
    inputs.sort_by_key(|p| (p.lead().key, p.terms.len()));
    for mut g in inputs {
        if g.is_constant() {
            return Some(one());
        }
        g.make_monic();
        engine.update(g);
    }

    let mut processed = 0usize;
    while let Some(pair) = engine.pop_pair() {
        processed += 1;
        if budget.is_some_and(|b| processed > b.max_pairs) {
            return None;
        }
        let s = s_polynomial(&engine.polys[pair.i], &engine.polys[pair.j], order);
        if s.is_zero() {
            continue;
        }
        let mut h = reduce_full(s, &engine.active_refs(), order, |c| c[0]);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Some(one());
        }
        h.make_monic();
        if budget.is_some_and(|b| coefficient_bits(&h) > b.max_coefficient_bits) {
            return None;
        }
        engine.update(h);
    }

    // interreduce the active set
    let mut minimal: Vec<SortedPoly> = engine
        .polys
        .into_iter()
        .zip(engine.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    minimal.sort_by_key(|p| p.lead().key);
    // unreduced inputs may still sit above a divisor; drop them
    let lms: Vec<Monomial> = minimal.iter().map(SortedPoly::lm).collect();
    let keep: Vec<bool> = (0..lms.len())
        .map(|i| !(0..i).any(|j| lms[j].divides(&lms[i])))
        .collect();
    let minimal: Vec<SortedPoly> = minimal
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| p)
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let lead = minimal[i].terms[0].clone();
        let tail = SortedPoly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let others: Vec<&SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let mut r = reduce_full(tail, &others, order, |c| c[0]);
        r.terms.insert(0, lead);
        reduced.push(r);
    }
    Some(reduced)
}

pub(crate) fn s_poly_reduces_to_zero(
    a: &SortedPoly,
    b: &SortedPoly,
    basis: &[&SortedPoly],
    order: MonomialOrder,
) -> bool {
    reduce_full(s_polynomial(a, b, order), basis, order, |c| c[0]).is_zero()
}
