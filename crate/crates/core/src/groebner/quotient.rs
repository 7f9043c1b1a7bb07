use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{GroebnerBasis, MonomialOrder};
use crate::linalg::RatMatrix;
use crate::par;
use crate::polycore::{Monomial, Polynomial, Rational, Var};

/// The finite-dimensional algebra `A = ℚ[x,y,z]/I` in its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    order: MonomialOrder,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `basis[k] = var · basis[j]` for `k > 0`.
    parent: Vec<Option<(Var, usize)>>,
    mult: [RatMatrix; 3],
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Quotient {
    Finite(QuotientAlgebra),
    InfiniteDimensional,
}

impl Quotient {
    pub fn finite(self) -> Option<QuotientAlgebra> {
        match self {
            Quotient::Finite(qa) => Some(qa),
            Quotient::InfiniteDimensional => None,
        }
    }
}

/// Standard monomials and multiplication matrices of a zero-dimensional ideal.
pub fn quotient_basis(gb: &GroebnerBasis) -> Quotient {
    let order = gb.order();
    if gb.contains_one() {
        return Quotient::Finite(QuotientAlgebra {
            order,
            basis: Vec::new(),
            index: HashMap::new(),
            parent: Vec::new(),
            mult: [
                RatMatrix::zeros(0, 0),
                RatMatrix::zeros(0, 0),
                RatMatrix::zeros(0, 0),
            ],
        });
    }
    let lms = gb.leading_monomials();
    let mut bound = [None::<u32>; 3];
    for m in &lms {
        if let Some(v) = m.pure_power_of() {
            let e = m.exp(v);
            let b = &mut bound[v.index()];
            *b = Some(b.map_or(e, |old| old.min(e)));
        }
    }
    let [Some(bx), Some(by), Some(bz)] = bound else {
        return Quotient::InfiniteDimensional;
    };

    let mut basis = Vec::new();
    for a in 0..bx {
        for b in 0..by {
            for c in 0..bz {
                let m = Monomial::new(a, b, c);
                if gb.is_standard(&m) {
                    basis.push(m);
                }
            }
        }
    }
    basis.sort_by_key(|m| order.key(m));
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let parent = basis
        .iter()
        .map(|m| {
            Var::ALL
                .iter()
                .find_map(|&v| m.div_var(v).map(|d| (v, index[&d])))
        })
        .collect();

    let dim = basis.len();
    let columns_for = |v: Var| -> RatMatrix {
        let cols = par::map(&basis, |b| {
            let prod = b.mul(&Monomial::var(v));
            let mut col = vec![Rational::zero(); dim];
            if let Some(&k) = index.get(&prod) {
                col[k] = Rational::one();
            } else {
                let nf = gb.normal_form(&Polynomial::term(Rational::one(), prod));
                for (m, c) in nf.terms() {
                    col[index[m]] = c.clone();
                }
            }
            col
        });
        RatMatrix::from_columns(dim, cols)
    };
    let mult = [
        columns_for(Var::X),
        columns_for(Var::Y),
        columns_for(Var::Z),
    ];
    Quotient::Finite(QuotientAlgebra {
        order,
        basis,
        index,
        parent,
        mult,
    })
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.basis
    }

    /// Matrix of multiplication by a coordinate; column `j` holds the normal
    /// form of `v · basis[j]`.
    pub fn mult(&self, v: Var) -> &RatMatrix {
        &self.mult[v.index()]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of the class of `u` in the standard-monomial basis.
    ///
    /// Works for arbitrary `u` by pushing each monomial through the
    /// multiplication matrices, so no Gröbner reduction of `u` is needed.
    pub fn coords_of(&self, u: &Polynomial) -> Vec<Rational> {
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        if dim == 0 {
            return out;
        }
        let mut cache: HashMap<Monomial, Vec<Rational>> = HashMap::new();
        for (m, c) in u.terms() {
            let v = self.monomial_coords(m, &mut cache);
            for (o, x) in out.iter_mut().zip(v.iter()) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    fn monomial_coords(
        &self,
        m: &Monomial,
        cache: &mut HashMap<Monomial, Vec<Rational>>,
    ) -> Vec<Rational> {
        if let Some(&k) = self.index.get(m) {
            let mut e = vec![Rational::zero(); self.dim()];
            e[k] = Rational::one();
            return e;
        }
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let var = Var::ALL
            .into_iter()
            .find(|&v| m.exp(v) > 0)
            .expect("the constant monomial is standard in a proper ideal");
        let lower = m.div_var(var).expect("exponent is positive");
        let prev = self.monomial_coords(&lower, cache);
        let v = self.mult[var.index()].mul_vec(&prev);
        cache.insert(*m, v.clone());
        v
    }

    /// The polynomial with the given coordinates.
    pub fn element(&self, coords: &[Rational]) -> Polynomial {
        Polynomial::from_terms(self.basis.iter().copied().zip(coords.iter().cloned()))
    }

    /// Matrix of multiplication by the element with coordinates `v`.
    ///
    /// Column `k` is `basis[k] · v`, obtained by walking the parent chain of
    /// `basis[k]` through the coordinate multiplication matrices.
    pub fn mult_matrix_of_coords(&self, v: &[Rational]) -> RatMatrix {
        let dim = self.dim();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(dim);
        for k in 0..dim {
            let col = match self.parent[k] {
                None => v.to_vec(),
                Some((var, j)) => self.mult[var.index()].mul_vec(&cols[j]),
            };
            cols.push(col);
        }
        RatMatrix::from_columns(dim, cols)
    }

    /// Matrix of multiplication by `u` on `A`.
    pub fn mult_matrix(&self, u: &Polynomial) -> RatMatrix {
        self.mult_matrix_of_coords(&self.coords_of(u))
    }

    /// Coordinates of every product `basis[j] · basis[k]`, indexed `[j][k]`.
    pub fn product_table(&self) -> Vec<Vec<Vec<Rational>>> {
        let dim = self.dim();
        // column k of the multiplication matrix of basis[j]
        par::map_range(dim, |k| {
            let mut e = vec![Rational::zero(); dim];
            e[k] = Rational::one();
            self.mult_matrix_of_coords(&e)
        })
        .into_iter()
        .map(|m| (0..dim).map(|j| m.column(j)).collect())
        .collect()
    }
}
