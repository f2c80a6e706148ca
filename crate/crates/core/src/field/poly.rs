//! Dense univariate polynomials in `t` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

/// Polynomial over Q, coefficients stored lowest degree first with no
/// trailing zeros. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.push(c);
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Multiplicity of `t` as a factor; `None` for zero.
    pub fn ord_t(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by `t^k`; the caller guarantees `k <= ord_t`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.is_zero() || self.ord_t().unwrap() >= k);
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Quotient by a divisor known to divide `self` exactly (e.g. a gcd).
    /// Works over Z: a primitive divisor of an integer polynomial leaves an
    /// integer quotient.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        if divisor.is_one() {
            return self.clone();
        }
        let (a, da) = integer_form(self);
        let (g, dg) = integer_form(divisor);
        let content = g.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let gp: Vec<BigInt> = g.iter().map(|c| c / &content).collect();
        let q = int_div(a, &gp).expect("exact division");
        // self / divisor = (A / Gp) · dg / (da · content)
        let scale = Rat::new(dg, da * content);
        from_integer_form(q, &BigInt::one()).scale(&scale)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    ///
    /// Computed over Z by the small-primes modular method, which avoids the
    /// coefficient swell of Euclid over Q.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let shift = self.ord_t().unwrap().min(other.ord_t().unwrap());
        let a = self.shift_down(self.ord_t().unwrap());
        let b = other.shift_down(other.ord_t().unwrap());
        let core = if a.degree() == Some(0) || b.degree() == Some(0) {
            Poly::one()
        } else if a == b {
            a.monic()
        } else {
            let g = modular_gcd(&primitive_part(&a), &primitive_part(&b));
            Poly::from_coeffs(g.into_iter().map(Rat::from_integer).collect()).monic()
        };
        &core * &Poly::monomial(Rat::one(), shift)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }
}

/// `p = v / d` with integer `v` and `d` the lcm of the denominators.
fn integer_form(p: &Poly) -> (Vec<BigInt>, BigInt) {
    let d = p.coeffs.iter().fold(
        BigInt::one(),
        |acc, c| {
            if c.denom().is_one() {
                acc
            } else {
                acc.lcm(c.denom())
            }
        },
    );
    let v = p
        .coeffs
        .iter()
        .map(|c| {
            if d.is_one() {
                c.numer().clone()
            } else {
                c.numer() * (&d / c.denom())
            }
        })
        .collect();
    (v, d)
}

fn from_integer_form(v: Vec<BigInt>, d: &BigInt) -> Poly {
    Poly::from_coeffs(
        v.into_iter()
            .map(|c| {
                if d.is_one() {
                    Rat::from_integer(c)
                } else {
                    Rat::new(c, d.clone())
                }
            })
            .collect(),
    )
}

/// Quotient of `a` by `b` over Z, or `None` if `b` does not divide `a`.
fn int_div(mut a: Vec<BigInt>, b: &[BigInt]) -> Option<Vec<BigInt>> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let top = &a[i + db];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            a[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    a.iter().all(Zero::is_zero).then_some(q)
}

/// Integer coefficients with content 1 and positive leading coefficient.
fn primitive_part(p: &Poly) -> Vec<BigInt> {
    make_primitive(integer_form(p).0)
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return v;
    }
    let sign = if v.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let d = content * sign;
    v.iter().map(|c| c / &d).collect()
}

// ---- modular gcd over Z ----------------------------------------------------
//
// Small-primes method: compute gcd(A, B) mod p for word-sized primes,
// scale each image to the leading coefficient gcd(lc A, lc B), combine by
// CRT, and stop once the lifted candidate divides both inputs.

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic for n < 3_215_031_751
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Primes below 2³¹, largest first; products of two residues fit in `u64`.
/// The first few hundred are cached, the rest generated on demand.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| all_primes().take(512).collect());
    let last = *cached.last().unwrap();
    cached
        .iter()
        .copied()
        .chain(all_primes().skip_while(move |&p| p >= last))
}

fn all_primes() -> impl Iterator<Item = u64> {
    (1u64 << 30..(1u64 << 31) - 1).rev().filter(|&n| is_prime(n))
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue below p"))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd in F_p[t].
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let q = a.last().unwrap() * inv % p;
            let shift = a.len() - 1 - db;
            for (j, bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - q * bj % p) % p;
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = pow_mod(lc, p - 2, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

fn divides(g: &[BigInt], a: &[BigInt]) -> bool {
    int_div(a.to_vec(), g).is_some()
}

/// gcd of two primitive integer polynomials of positive degree, as a
/// primitive polynomial.
fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let gamma = la.gcd(lb);
    let mut best_deg = a.len().min(b.len()) - 1;
    let mut image: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::zero();
    for p in primes() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        if deg > best_deg {
            continue; // unlucky prime
        }
        let gm = gamma.mod_floor(&pb).to_u64().unwrap();
        let scaled: Vec<u64> = g.iter().map(|c| c * gm % p).collect();
        let centre = |c: BigInt, m: &BigInt| if c > (m >> 1) { c - m } else { c };
        if deg < best_deg || modulus.is_zero() {
            best_deg = deg;
            image = scaled.into_iter().map(|c| centre(BigInt::from(c), &pb)).collect();
            modulus = pb;
        } else {
            // CRT on symmetric residues: x ≡ image (mod M), x ≡ r (mod p)
            let m_inv = BigInt::from(pow_mod(modulus.mod_floor(&pb).to_u64().unwrap(), p - 2, p));
            let next = &modulus * &pb;
            let mut changed = false;
            for (c, r) in image.iter_mut().zip(scaled) {
                let k = ((BigInt::from(r) - &*c) * &m_inv).mod_floor(&pb);
                let lifted = centre(&*c + &modulus * k, &next);
                if lifted != *c {
                    changed = true;
                    *c = lifted;
                }
            }
            modulus = next;
            if changed {
                continue;
            }
        }
        let candidate = make_primitive(image.clone());
        if divides(&candidate, a) && divides(&candidate, b) {
            return candidate;
        }
    }
    unreachable!("ran out of primes")
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // convolve over Z, normalising each output coefficient once
        let (a, da) = integer_form(self);
        let (b, db) = integer_form(rhs);
        let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        from_integer_form(prod, &(da * db))
    }
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, c: &Rat, k: usize) -> fmt::Result {
    let var = match k {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{k}"),
    };
    if k == 0 {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{c}*{var}")
    }
}

/// Terms are written in ascending powers of `t`, e.g. `1-1/2*t+t^3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str("-")?;
            } else {
                f.write_str("+")?;
            }
            write_coeff_term(f, &c.abs(), k)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn div_rem_reconstructs_dividend() {
        let a = p(&[3, -1, 4, 1, 5]);
        let b = p(&[2, 0, 7]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (1+t)(2-t) and (1+t)t^2
        let f = p(&[1, 1]);
        let a = &f * &p(&[2, -1]);
        let b = &f * &p(&[0, 0, 1]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[0, 0, 3]).gcd(&p(&[0, 6])), p(&[0, 1]));
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Poly::zero());
    }

    /// Plain Euclid over Q, kept as an independent oracle for `gcd`.
    fn euclid_gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    #[test]
    fn modular_gcd_matches_euclid() {
        let cases = [
            (p(&[2, 3, 1]), p(&[1, 1])),
            (&p(&[0, 0, 3, 1]) * &p(&[5, -1, 2]), &p(&[0, 1, 3, 1]) * &p(&[5, -1, 2])),
            (p(&[7]), p(&[1, 2, 3])),
            (p(&[1, 0, 1]), p(&[1, 0, -1])),
            (&p(&[1, 1]) * &p(&[1, 1]), &p(&[-1, 1]) * &p(&[1, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(a.gcd(&b), euclid_gcd(&a, &b), "{a} / {b}");
        }
        let half = Poly::from_coeffs(vec![Rat::new(1.into(), 2.into()), Rat::new(1.into(), 3.into())]);
        let a = &half * &p(&[1, 4, 0, 2]);
        let b = &half * &p(&[0, 3, 1]);
        assert_eq!(a.gcd(&b), euclid_gcd(&a, &b));
    }

    #[test]
    fn modular_gcd_matches_euclid_on_random_products() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut random_poly = |deg: usize| {
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-40..=40)).collect();
            Poly::from_ints(&coeffs)
        };
        for round in 0..60 {
            let common = random_poly(round % 9);
            let a = &random_poly(3 + round % 5) * &common;
            let b = &random_poly(2 + round % 7) * &common;
            assert_eq!(a.gcd(&b), euclid_gcd(&a, &b), "{a} / {b}");
            let a2 = &a * &a;
            assert_eq!(a2.gcd(&(&a * &b)), euclid_gcd(&a2, &(&a * &b)));
        }
    }

    #[test]
    fn exact_div_inverts_mul() {
        let half = Rat::new(1.into(), 2.into());
        let a = Poly::from_coeffs(vec![
            half.clone(),
            Rat::from_integer(3.into()),
            Rat::new((-2).into(), 3.into()),
        ]);
        let b = Poly::from_coeffs(vec![Rat::new(5.into(), 4.into()), half]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b), a);
        assert_eq!(prod.exact_div(&a), b);
        assert_eq!(prod.exact_div(&prod), Poly::one());
        assert_eq!(Poly::zero().exact_div(&b), Poly::zero());
    }

    #[test]
    fn integer_mul_matches_schoolbook() {
        let a = Poly::from_coeffs(vec![Rat::new(1.into(), 3.into()), Rat::new((-7).into(), 2.into())]);
        let b = Poly::from_coeffs(vec![
            Rat::new(3.into(), 5.into()),
            Rat::zero(),
            Rat::new(2.into(), 7.into()),
        ]);
        let mut expect = vec![Rat::zero(); 4];
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                expect[i + j] += x * y;
            }
        }
        assert_eq!(&a * &b, Poly::from_coeffs(expect));
    }

    #[test]
    fn ord_t_counts_low_zeros() {
        assert_eq!(p(&[0, 0, 3, 1]).ord_t(), Some(2));
        assert_eq!(p(&[5]).ord_t(), Some(0));
        assert_eq!(Poly::zero().ord_t(), None);
    }

    #[test]
    fn display_ascending_terms() {
        assert_eq!(p(&[1, -1, 0, 1]).to_string(), "1-t+t^3");
        assert_eq!(p(&[0, -2]).to_string(), "-2*t");
        assert_eq!(Poly::zero().to_string(), "0");
        let half = Poly::from_coeffs(vec![Rat::new(1.into(), 2.into()), Rat::new((-3).into(), 4.into())]);
        assert_eq!(half.to_string(), "1/2-3/4*t");
    }
}
