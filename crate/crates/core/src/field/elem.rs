use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{expr, Poly, Rat, Valuation};
use crate::error::{Error, Result};

/// An element `num/den` of Q(t).
///
/// Always canonical: `gcd(num, den) = 1`, `den` monic, and zero is `0/1`.
/// Equal values therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: Poly,
    den: Poly,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        FieldElem::from_int(1)
    }

    /// The uniformizer `t`.
    pub fn t() -> Self {
        FieldElem::from_poly(Poly::monomial(Rat::one(), 1))
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        let m = Poly::monomial(Rat::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            FieldElem::from_poly(m)
        } else {
            FieldElem {
                num: Poly::one(),
                den: m,
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(c: Rat) -> Self {
        FieldElem::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Self {
        FieldElem { num, den: Poly::one() }
    }

    /// Builds `num/den` in canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return FieldElem::zero();
        }
        if den.is_one() {
            return FieldElem { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        FieldElem { num, den }
    }

    /// Normalises a fraction whose parts are already coprime.
    fn coprime(mut num: Poly, mut den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        FieldElem { num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `ord_t(num) - ord_t(den)`.
    pub fn valuation(&self) -> Valuation {
        match (self.num.ord_t(), self.den.ord_t()) {
            (Some(n), Some(d)) => Valuation::Finite(n as i64 - d as i64),
            _ => Valuation::Infinite,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &FieldElem) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = FieldElem::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return FieldElem::canonical(&self.num + &rhs.num, self.den.clone());
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return FieldElem::coprime(num, &self.den * &rhs.den);
        }
        let b = self.den.exact_div(&g);
        let d = rhs.den.exact_div(&g);
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return FieldElem::zero();
        }
        let h = num.gcd(&g);
        let den = &b * &exact_div(&rhs.den, &h);
        FieldElem::coprime(exact_div(&num, &h), den)
    }
}

fn exact_div(a: &Poly, g: &Poly) -> Poly {
    if g.is_one() {
        a.clone()
    } else {
        a.exact_div(g)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() || rhs.is_zero() {
            return FieldElem::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &exact_div(&self.num, &g1) * &exact_div(&rhs.num, &g2);
        let den = &exact_div(&self.den, &g2) * &exact_div(&rhs.den, &g1);
        FieldElem::coprime(num, den)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl std::iter::Sum for FieldElem {
    fn sum<I: Iterator<Item = FieldElem>>(iter: I) -> FieldElem {
        iter.fold(FieldElem::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for FieldElem {
    fn product<I: Iterator<Item = FieldElem>>(iter: I) -> FieldElem {
        iter.fold(FieldElem::one(), |a, b| &a * &b)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

/// Prints in the expression grammar accepted by [`expr::parse_field_expr`],
/// so `parse(x.to_string()) == x`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

impl FromStr for FieldElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        expr::parse_field_expr(s)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    fn poly(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    /// Independent check that `a/b == c/d` by cross multiplication of the
    /// raw polynomials, bypassing canonical form.
    fn cross_equal(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> bool {
        (a * d) == (c * b)
    }

    #[test]
    fn add_examples() {
        let x = fe("(1+t)/(2*t^3)");
        assert_eq!(&FieldElem::zero() + &x, x);
        assert_eq!(
            FieldElem::t() + FieldElem::t_pow(2),
            FieldElem::from_poly(poly(&[0, 1, 1]))
        );
        // 1/(1+t) + t/(1+t)
        let a = FieldElem::from_fraction(poly(&[1]), poly(&[1, 1])).unwrap();
        let b = FieldElem::from_fraction(poly(&[0, 1]), poly(&[1, 1])).unwrap();
        let s = &a + &b;
        // oracle: (1·(1+t) + t·(1+t)) / (1+t)^2 == 1/1
        let n = &(&poly(&[1]) * &poly(&[1, 1])) + &(&poly(&[0, 1]) * &poly(&[1, 1]));
        let d = &poly(&[1, 1]) * &poly(&[1, 1]);
        assert!(cross_equal(&n, &d, &poly(&[1]), &poly(&[1])));
        assert_eq!(s, FieldElem::one());
    }

    #[test]
    fn mul_examples() {
        let x = fe("3/(t-2)");
        assert_eq!(&FieldElem::one() * &x, x);
        assert_eq!(FieldElem::t() * FieldElem::t_pow(2), FieldElem::t_pow(3));
        let a = FieldElem::from_poly(poly(&[1, 1]));
        let b = FieldElem::from_fraction(poly(&[1]), poly(&[1, 1])).unwrap();
        let p = &a * &b;
        assert!(cross_equal(&poly(&[1, 1]), &poly(&[1, 1]), &poly(&[1]), &poly(&[1])));
        assert_eq!(p, FieldElem::one());
    }

    #[test]
    fn inv_examples() {
        assert_eq!(FieldElem::one().inv().unwrap(), FieldElem::one());
        assert_eq!(FieldElem::t_pow(2).inv().unwrap(), FieldElem::t_pow(-2));
        let a = FieldElem::from_poly(poly(&[1, -1]));
        let r = a.inv().unwrap();
        assert_eq!(r.numerator(), &poly(&[-1]));
        assert_eq!(r.denominator(), &poly(&[-1, 1]));
        assert_eq!(&a * &r, FieldElem::one());
        assert_eq!(FieldElem::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(FieldElem::zero().valuation(), Valuation::Infinite);
        assert_eq!(fe("3*t^2+t^3").valuation(), Valuation::Finite(2));
        assert_eq!(fe("(t+t^2)/(2+t)").valuation(), Valuation::Finite(1));
        assert_eq!(fe("1/t^3").valuation(), Valuation::Finite(-3));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = fe("(2*t+2)/(4*t^2+4*t)");
        let b = fe("1/(2*t)");
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &poly(&[0, 1]));
        assert_eq!(a.to_string(), "1/2/t");
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "0",
            "1",
            "-t",
            "(1+t)/(2*t^3)",
            "-3/4*t^2/(1-t+t^5)",
            "t^-2",
            "(1-t)/(1+t)",
        ] {
            let x = fe(s);
            assert_eq!(fe(&x.to_string()), x, "{s} printed as {x}");
        }
    }

    #[test]
    fn pow_negative() {
        let x = fe("1+t");
        assert_eq!(x.pow(-2).unwrap() * x.pow(2).unwrap(), FieldElem::one());
        assert_eq!(FieldElem::zero().pow(-1), Err(Error::DivisionByZero));
        assert_eq!(FieldElem::zero().pow(0).unwrap(), FieldElem::one());
    }
}
