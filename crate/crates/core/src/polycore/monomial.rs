use std::fmt;

/// One of the three coordinates of ℝ³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Self::ALL[i]
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

/// A power product `x^a y^b z^c`.
///
/// The derived `Ord` is plain lexicographic on the exponent triple; it is only
/// used for canonical storage. Term orders used by Gröbner computations live in
/// [`crate::groebner::MonomialOrder`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial([x, y, z])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// True when `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0[0] <= other.0[0] && self.0[1] <= other.0[1] && self.0[2] <= other.0[2]
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial([
                other.0[0] - self.0[0],
                other.0[1] - self.0[1],
                other.0[2] - self.0[2],
            ]))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] == 0 || other.0[i] == 0)
    }

    /// Removes one factor of `v`; `None` if `v` does not occur.
    pub fn div_var(&self, v: Var) -> Option<Monomial> {
        let i = v.index();
        if self.0[i] == 0 {
            None
        } else {
            let mut e = self.0;
            e[i] -= 1;
            Some(Monomial(e))
        }
    }

    /// If this is a pure power of a single variable, that variable.
    pub fn pure_power_of(&self) -> Option<Var> {
        let nonzero: Vec<usize> = (0..3).filter(|&i| self.0[i] > 0).collect();
        match nonzero.as_slice() {
            [i] => Some(Var::from_index(*i)),
            _ => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}
