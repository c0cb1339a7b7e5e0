//! Arithmetic in `Z[sqrt 2]` and its residue fields of prime norm.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::primes::{self, pow_mod};
use crate::error::{Error, Result};

/// `a + b*sqrt(2)` with exact integer components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    /// The fundamental unit `1 + sqrt 2`.
    pub fn unit() -> Self {
        QuadInt::new(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn galois_conj(&self) -> Self {
        QuadInt { a: self.a.clone(), b: -&self.b }
    }

    /// `x * conj(x) = a^2 - 2 b^2`.
    pub fn field_norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(2) * &self.b * &self.b
    }

    /// Powers with negative exponents are allowed for units (norm `+-1`).
    pub fn pow(&self, exp: i64) -> Self {
        let (mut base, mut e) = if exp < 0 {
            let n = self.field_norm();
            assert!(n.abs().is_one(), "negative power of a non-unit");
            // inverse of a unit is conj / norm
            let c = self.galois_conj();
            (QuadInt { a: &c.a * &n, b: &c.b * &n }, exp.unsigned_abs())
        } else {
            (self.clone(), exp as u64)
        };
        let mut acc = QuadInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the residue map `a + b sqrt2 -> a + b s (mod p)`.
    pub fn residue(&self, w: &SplitPrimeWitness) -> u64 {
        let p = BigInt::from(w.p);
        let r = (&self.a + &self.b * BigInt::from(w.s)).mod_floor(&p);
        r.to_u64().expect("residue below p")
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt2", self.a, -&self.b)
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a * &rhs.a + BigInt::from(2) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -self.a, b: -self.b }
    }
}

/// An odd prime `p` with a square root `s` of 2 modulo `p`; it names the
/// prime ideal `(p, sqrt2 - s)` of norm `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitPrimeWitness {
    pub p: u64,
    pub s: u64,
}

impl SplitPrimeWitness {
    pub fn is_valid(&self) -> bool {
        self.p > 2
            && primes::is_prime(self.p)
            && (1..self.p).contains(&self.s)
            && pow_mod(self.s, 2, self.p) == 2 % self.p
    }

    /// Residue of the fundamental unit `1 + sqrt 2`.
    pub fn unit_residue(&self) -> u64 {
        (1 + self.s) % self.p
    }
}

/// `2` is a square mod an odd prime `p` exactly when `p = +-1 (mod 8)`.
pub fn is_split(p: u64) -> bool {
    p > 2 && matches!(p % 8, 1 | 7)
}

/// The smaller square root of 2 modulo an odd split prime (Tonelli-Shanks).
pub fn sqrt2_mod(p: u64) -> Option<u64> {
    if !is_split(p) {
        return None;
    }
    let r = tonelli_shanks(2, p)?;
    Some(r.min(p - r))
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = pow_mod(tt, 2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = pow_mod(b, 2, p);
        t = (t as u128 * c as u128 % p as u128) as u64;
        r = (r as u128 * b as u128 % p as u128) as u64;
    }
    Some(r)
}

/// Split primes `p >= start` in increasing order, with their witnesses.
pub fn split_primes_from(start: u64) -> impl Iterator<Item = SplitPrimeWitness> {
    primes::primes_from(start.max(3))
        .filter(|&p| is_split(p))
        .map(|p| SplitPrimeWitness { p, s: sqrt2_mod(p).expect("split prime has a root") })
}

/// Smallest prime not dividing `x`; for `x = +-1` this is 2.
pub fn find_small_prime_not_dividing(x: &BigInt) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::pre("x must be non-zero"));
    }
    Ok(primes::least_prime_not_dividing(x))
}

/// Smallest split prime `p >= start` whose residue map (smaller root) does
/// not kill `x`.
pub fn find_split_prime_avoiding(x: &QuadInt, start: u64) -> Result<SplitPrimeWitness> {
    if x.is_zero() {
        return Err(Error::pre("x must be non-zero"));
    }
    Ok(split_primes_from(start)
        .find(|w| x.residue(w) != 0)
        .expect("a non-zero element has finitely many prime divisors"))
}

/// Least `r >= 1` with `x^r = 1 (mod p)`.
pub fn multiplicative_order(x: u64, p: u64) -> Result<u64> {
    let x = x % p;
    if x == 0 {
        return Err(Error::pre(format!("{x} is not a unit mod {p}")));
    }
    let mut r = p - 1;
    for (q, _) in primes::factorize(p - 1) {
        while r % q == 0 && pow_mod(x, r / q, p) == 1 {
            r /= q;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_arithmetic() {
        assert_eq!(QuadInt::unit().field_norm(), BigInt::from(-1));
        assert_eq!(QuadInt::unit().pow(2), QuadInt::new(3, 2));
        assert_eq!(&QuadInt::unit().pow(-3) * &QuadInt::unit().pow(3), QuadInt::one());
    }

    #[test]
    fn split_prime_examples() {
        let w = find_split_prime_avoiding(&QuadInt::new(0, -1), 2).unwrap();
        assert_eq!((w.p, w.s), (7, 3));
        assert_eq!(QuadInt::new(0, -1).residue(&w), 4);

        let w = find_split_prime_avoiding(&QuadInt::new(7, 0), 2).unwrap();
        assert_eq!(w.p, 17);
        assert_ne!(QuadInt::new(7, 0).residue(&w), 0);
        assert!(find_split_prime_avoiding(&QuadInt::zero(), 2).is_err());
    }

    #[test]
    fn split_criterion_matches_square_search() {
        for p in primes::primes().skip(1).take_while(|&p| p < 10_000) {
            let brute = (1..p).any(|x| x * x % p == 2);
            assert_eq!(is_split(p), brute, "p = {p}");
            if brute {
                let s = sqrt2_mod(p).unwrap();
                assert!(SplitPrimeWitness { p, s }.is_valid());
                assert!(s <= p - s);
            }
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(1, 7).unwrap(), 1);
        assert_eq!(multiplicative_order(4, 7).unwrap(), 3);
        assert!(multiplicative_order(14, 7).is_err());
    }

    #[test]
    fn small_prime_examples() {
        assert_eq!(find_small_prime_not_dividing(&BigInt::from(30)).unwrap(), 7);
        assert_eq!(find_small_prime_not_dividing(&BigInt::from(-1)).unwrap(), 2);
        assert_eq!(find_small_prime_not_dividing(&BigInt::from(1 << 20)).unwrap(), 3);
        assert!(find_small_prime_not_dividing(&BigInt::zero()).is_err());
    }

    fn quad() -> impl Strategy<Value = QuadInt> {
        (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(a, b)| QuadInt::new(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn norm_is_multiplicative(x in quad(), y in quad()) {
            prop_assert_eq!((&x * &y).field_norm(), x.field_norm() * y.field_norm());
        }

        #[test]
        fn residue_map_is_ring_hom(x in quad(), y in quad(), idx in 0usize..40) {
            let w = split_primes_from(3).nth(idx).unwrap();
            let p = w.p;
            prop_assert_eq!((&x * &y).residue(&w), x.residue(&w) * y.residue(&w) % p);
            prop_assert_eq!((&x + &y).residue(&w), (x.residue(&w) + y.residue(&w)) % p);
        }

        #[test]
        fn order_divides_p_minus_1(x in 1u64..1_000_000, idx in 0usize..500) {
            let p = primes::nth_prime(idx + 1);
            prop_assume!(x % p != 0);
            let r = multiplicative_order(x, p).unwrap();
            prop_assert_eq!((p - 1) % r, 0);
            prop_assert_eq!(pow_mod(x, r, p), 1);
        }
    }
}
