//! The valued field Q(t) with the t-adic valuation.
//!
//! Its residue field is Q, which is formally real, so sums of squares never
//! cancel at the leading order: `v(a₁² + … + aₖ²) = 2·min v(aᵢ)`.

mod elem;
pub mod expr;
mod poly;

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use elem::FieldElem;
pub use poly::Poly;

/// Reduced big rational with positive denominator.
pub type Rat = BigRational;

/// t-adic valuation of a field element; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

/// `v(ab) = v(a) + v(b)` with `+∞` absorbing.
impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// A magnitude `2^(-exponent)` stored by its exponent. `Infinite` is the
/// magnitude of zero.
///
/// The derived order is the order of exponents, which is the reverse of the
/// order of magnitudes: the largest norm has the smallest exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NormExp {
    Finite(Rat),
    Infinite,
}

impl NormExp {
    pub fn zero_magnitude() -> Self {
        NormExp::Infinite
    }

    pub fn from_int(e: i64) -> Self {
        NormExp::Finite(Rat::from_integer(BigInt::from(e)))
    }

    pub fn exponent(&self) -> Option<&Rat> {
        match self {
            NormExp::Finite(e) => Some(e),
            NormExp::Infinite => None,
        }
    }

    pub fn is_zero_magnitude(&self) -> bool {
        matches!(self, NormExp::Infinite)
    }

    /// The larger of two magnitudes, i.e. the smaller exponent.
    pub fn max_magnitude(self, other: NormExp) -> NormExp {
        std::cmp::min(self, other)
    }

    /// Exponent of `|x|^n`.
    pub fn pow(&self, n: u32) -> NormExp {
        match self {
            NormExp::Finite(e) => NormExp::Finite(e * Rat::from_integer(BigInt::from(n))),
            NormExp::Infinite if n == 0 => NormExp::from_int(0),
            NormExp::Infinite => NormExp::Infinite,
        }
    }

    /// Exponent of `sqrt(|x|)`.
    pub fn sqrt(&self) -> NormExp {
        match self {
            NormExp::Finite(e) => NormExp::Finite(e / Rat::from_integer(BigInt::from(2))),
            NormExp::Infinite => NormExp::Infinite,
        }
    }

    /// Largest magnitude over an iterator; zero magnitude when empty.
    pub fn sup<I: IntoIterator<Item = NormExp>>(iter: I) -> NormExp {
        iter.into_iter().fold(NormExp::Infinite, NormExp::max_magnitude)
    }
}

impl From<Valuation> for NormExp {
    fn from(v: Valuation) -> Self {
        match v {
            Valuation::Finite(e) => NormExp::from_int(e),
            Valuation::Infinite => NormExp::Infinite,
        }
    }
}

impl fmt::Display for NormExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormExp::Finite(e) if e.is_zero() => f.write_str("0"),
            NormExp::Finite(e) => write!(f, "{e}"),
            NormExp::Infinite => f.write_str("+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magnitude_order_is_reversed() {
        let big = NormExp::from_int(0);
        let small = NormExp::from_int(3);
        assert!(big < small);
        assert_eq!(big.clone().max_magnitude(small.clone()), big);
        assert_eq!(NormExp::sup([small.clone(), NormExp::Infinite]), small);
        assert_eq!(NormExp::sup(Vec::new()), NormExp::Infinite);
    }

    #[test]
    fn pow_and_sqrt() {
        assert_eq!(NormExp::from_int(2).pow(3), NormExp::from_int(6));
        assert_eq!(NormExp::from_int(4).sqrt(), NormExp::from_int(2));
        assert_eq!(NormExp::from_int(1).sqrt().to_string(), "1/2");
        assert_eq!(NormExp::Infinite.pow(2), NormExp::Infinite);
    }

    #[test]
    fn valuation_addition_absorbs_infinity() {
        assert_eq!(Valuation::Finite(2) + Valuation::Finite(-1), Valuation::Finite(1));
        assert_eq!(Valuation::Finite(2) + Valuation::Infinite, Valuation::Infinite);
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinite);
    }
}
