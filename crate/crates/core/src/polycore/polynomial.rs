use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Monomial, Var};
use super::Rational;

/// Sparse polynomial in `x, y, z` with exact rational coefficients.
///
/// No stored coefficient is zero, so structural equality is mathematical
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Integer coefficients `nᵢ` and a denominator `d` with `self = Σ (nᵢ/d)·mᵢ`.
    fn integer_parts(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (nums, den)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> Polynomial {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let dm = m.div_var(v).expect("exponent is positive");
                out.insert(dm, c * Rational::from_integer(e.into()));
            }
        }
        Polynomial { terms: out }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut powers: [Vec<Rational>; 3] = Default::default();
        let max = self.max_exponents();
        for i in 0..3 {
            let mut pw = Vec::with_capacity(max[i] as usize + 1);
            pw.push(Rational::one());
            for k in 1..=max[i] as usize {
                let next = &pw[k - 1] * &point[i];
                pw.push(next);
            }
            powers[i] = pw;
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let e = m.exponents();
            acc += c
                * &powers[0][e[0] as usize]
                * &powers[1][e[1] as usize]
                * &powers[2][e[2] as usize];
        }
        acc
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, point: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let e = m.exponents();
                rational_to_f64(c)
                    * point[0].powi(e[0] as i32)
                    * point[1].powi(e[1] as i32)
                    * point[2].powi(e[2] as i32)
            })
            .sum()
    }

    /// Sum of absolute term magnitudes at a point; a scale for residuals.
    pub fn eval_abs_f64(&self, point: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let e = m.exponents();
                (rational_to_f64(c)
                    * point[0].powi(e[0] as i32)
                    * point[1].powi(e[1] as i32)
                    * point[2].powi(e[2] as i32))
                .abs()
            })
            .sum()
    }

    /// `p(q₁, q₂, q₃)`.
    pub fn substitute(&self, subs: &[Polynomial; 3]) -> Polynomial {
        let max = self.max_exponents();
        let powers: Vec<Vec<Polynomial>> = (0..3)
            .map(|i| {
                let mut pw = vec![Polynomial::one()];
                for k in 1..=max[i] as usize {
                    let next = &pw[k - 1] * &subs[i];
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponents();
            let prod = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize];
            acc = &acc + &prod.scale(c);
        }
        acc
    }

    fn max_exponents(&self) -> [u32; 3] {
        let mut max = [0u32; 3];
        for m in self.terms.keys() {
            for (i, slot) in max.iter_mut().enumerate() {
                *slot = (*slot).max(m.0[i]);
            }
        }
        max
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Both parts overflow f64: fall back to a ratio of leading digits.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // Integer products over a common denominator; one reduction per output term.
        let (a, da) = self.integer_parts();
        let (b, db) = rhs.integer_parts();
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &a {
            for (m2, c2) in &b {
                match acc.entry(m1.mul(m2)) {
                    Entry::Vacant(e) => {
                        e.insert(c1 * c2);
                    }
                    Entry::Occupied(mut e) => *e.get_mut() += c1 * c2,
                }
            }
        }
        let den = da * db;
        Polynomial {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Rational::new(c, den.clone())))
                .collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

/// Prints in the accepted input grammar, highest total degree first.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn addition_cancels_and_merges() {
        let x = Polynomial::x();
        let y = Polynomial::y();
        assert_eq!(&(&x + &y) + &(-&x), y);
        let p = &(&x * &y) + &Polynomial::from_int(3);
        assert_eq!(&p + &Polynomial::zero(), p);
        let x2 = &x * &x;
        let a = &x2 + &Polynomial::constant(q(1, 2));
        let b = &x2 - &Polynomial::constant(q(1, 2));
        assert_eq!(&a + &b, x2.scale(&q(2, 1)));
    }

    #[test]
    fn multiplication_examples() {
        let (x, y, z) = (Polynomial::x(), Polynomial::y(), Polynomial::z());
        assert_eq!(&(&x + &y) * &(&x - &y), &(&x * &x) - &(&y * &y));
        let p = &(&x * &y) + &z;
        assert_eq!(&p * &Polynomial::one(), p);
        // x·(y + 2xz + 4x³) = xy + 2x²z + 4x⁴
        let j = &(&y + &(&x * &z).scale(&q(2, 1))) + &x.pow(3).scale(&q(4, 1));
        let expected = Polynomial::from_terms([
            (Monomial::new(1, 1, 0), q(1, 1)),
            (Monomial::new(2, 0, 1), q(2, 1)),
            (Monomial::new(4, 0, 0), q(4, 1)),
        ]);
        assert_eq!(&x * &j, expected);
    }

    #[test]
    fn partial_derivatives() {
        let (x, y, z) = (Polynomial::x(), Polynomial::y(), Polynomial::z());
        let f1 = &(&(&x * &y) + &(&(&x * &x) * &z)) + &x.pow(4);
        let j = &(&y + &(&x * &z).scale(&q(2, 1))) + &x.pow(3).scale(&q(4, 1));
        assert_eq!(f1.partial(Var::X), j);
        assert!(Polynomial::from_int(7).partial(Var::X).is_zero());
        let xx = &z.scale(&q(2, 1)) + &(&x * &x).scale(&q(12, 1));
        assert_eq!(xx.partial(Var::X), x.scale(&q(24, 1)));
    }

    #[test]
    fn evaluation() {
        let (x, y, z) = (Polynomial::x(), Polynomial::y(), Polynomial::z());
        let j = &(&y + &(&x * &z).scale(&q(2, 1))) + &x.pow(3).scale(&q(4, 1));
        let zero = [q(0, 1), q(0, 1), q(0, 1)];
        assert!(j.eval(&zero).is_zero());
        let p = x.scale(&q(24, 1));
        assert_eq!(p.eval(&[q(1, 1), q(0, 1), q(0, 1)]), q(24, 1));
        assert_eq!(j.eval_f64([1.0, 0.0, 0.0]), 4.0);
    }

    #[test]
    fn substitution_matches_evaluation() {
        let (x, y, z) = (Polynomial::x(), Polynomial::y(), Polynomial::z());
        let p = &(&x * &y) - &z.pow(2);
        let s = p.substitute(&[&y + &z, x.clone(), Polynomial::from_int(2)]);
        // (y+z)·x − 4
        let expected = &(&(&y + &z) * &x) - &Polynomial::from_int(4);
        assert_eq!(s, expected);
    }

    #[test]
    fn display_uses_input_grammar() {
        let (x, y, z) = (Polynomial::x(), Polynomial::y(), Polynomial::z());
        let p = &(&(&x * &x) * &y).scale(&q(-1, 1)) + &z;
        assert_eq!(p.to_string(), "-x^2*y + z");
        let r = (&x * &y.pow(2)).scale(&q(3, 2));
        assert_eq!(r.to_string(), "3/2*x*y^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::constant(q(-5, 3)).to_string(), "-5/3");
    }
}
