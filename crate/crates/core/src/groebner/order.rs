use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::polycore::Monomial;

const FIELD_BITS: u32 = 21;
const FIELD_MAX: u64 = (1 << FIELD_BITS) - 1;

/// Term order on monomials in `x > y > z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 3] = [
        MonomialOrder::DegRevLex,
        MonomialOrder::DegLex,
        MonomialOrder::Lex,
    ];

    /// Packs a monomial into an integer whose natural order is this term order.
    ///
    /// Exponents and total degree must stay below 2²¹.
    #[inline]
    pub fn key(self, m: &Monomial) -> u64 {
        let [a, b, c] = m.exponents().map(u64::from);
        let d = a + b + c;
        debug_assert!(d <= FIELD_MAX, "monomial degree out of range");
        let (k0, k1, k2) = match self {
            MonomialOrder::DegRevLex => (d, FIELD_MAX - c, FIELD_MAX - b),
            MonomialOrder::DegLex => (d, a, b),
            MonomialOrder::Lex => (a, b, c),
        };
        (k0 << (2 * FIELD_BITS)) | (k1 << FIELD_BITS) | k2
    }

    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown monomial order `{0}` (expected degrevlex, deglex or lex)")]
pub struct UnknownOrder(pub String);

impl FromStr for MonomialOrder {
    type Err = UnknownOrder;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degrevlex" | "grevlex" | "dp" => Ok(MonomialOrder::DegRevLex),
            "deglex" | "Dp" => Ok(MonomialOrder::DegLex),
            "lex" | "lp" => Ok(MonomialOrder::Lex),
            other => Err(UnknownOrder(other.to_string())),
        }
    }
}
