//! Rigorous enclosures of `exp` and `ln` at exact rational arguments.
//!
//! Bounds are dyadic rationals rounded outward at a working precision given
//! in bits. Callers that need a decision (is `d >= e^30`?) retry with more
//! bits until the enclosure separates; see [`compare_with_exp`].

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Precisions tried by the adaptive helpers, in bits.
pub const PRECISION_LADDER: [u32; 7] = [64, 128, 256, 512, 1024, 2048, 4096];

/// Closed interval `[lo, hi]` of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn dyadic_floor(x: &BigRational, prec: u32) -> BigRational {
    let s = BigInt::one() << prec;
    BigRational::new((x * &s).floor().to_integer(), s)
}

fn dyadic_ceil(x: &BigRational, prec: u32) -> BigRational {
    let s = BigInt::one() << prec;
    BigRational::new((x * &s).ceil().to_integer(), s)
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // very large or very small: go through the integer part
        let i = x.to_integer();
        i.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
    })
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Interval::point(BigRational::from_integer(n.into()))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }

    /// Certified comparison against an exact value; `None` when `x` lies in
    /// the interval and the interval is not a point.
    pub fn cmp_rational(&self, x: &BigRational) -> Option<Ordering> {
        if &self.hi < x {
            Some(Ordering::Less)
        } else if &self.lo > x {
            Some(Ordering::Greater)
        } else if self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `ceil` of every point in the interval, when they all agree.
    pub fn common_ceil(&self) -> Option<BigInt> {
        let a = self.lo.ceil().to_integer();
        let b = self.hi.ceil().to_integer();
        (a == b).then_some(a)
    }

    /// Relative width below `2^-bits` (absolute width for intervals touching 0).
    pub fn is_tight(&self, bits: u32) -> bool {
        let w = self.width();
        let scale = self.lo.abs().max(self.hi.abs()).max(BigRational::one());
        w * (BigRational::from_integer(BigInt::one() << bits)) <= scale
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        assert!(!c.is_negative());
        Interval { lo: &self.lo * c, hi: &self.hi * c }
    }

    pub fn add_rational(&self, c: &BigRational) -> Interval {
        Interval { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn exp(&self, prec: u32) -> Interval {
        Interval { lo: exp_bounds(&self.lo, prec).lo, hi: exp_bounds(&self.hi, prec).hi }
    }

    pub fn ln(&self, prec: u32) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(Error::pre("ln needs a positive argument"));
        }
        Ok(Interval { lo: ln_bounds(&self.lo, prec)?.lo, hi: ln_bounds(&self.hi, prec)?.hi })
    }
}

fn fixed_floor(x: &BigRational, wp: u32) -> BigInt {
    (x * BigRational::from_integer(BigInt::one() << wp)).floor().to_integer()
}

fn fixed_ceil(x: &BigRational, wp: u32) -> BigInt {
    (x * BigRational::from_integer(BigInt::one() << wp)).ceil().to_integer()
}

fn shr_ceil(x: BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

fn from_fixed(m: BigInt, wp: u32) -> BigRational {
    BigRational::new(m, BigInt::one() << wp)
}

/// Enclosure of `exp(x)`.
pub fn exp_bounds(x: &BigRational, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(BigRational::one());
    }
    if x.is_negative() {
        let e = exp_bounds(&-x, prec + 4);
        let wp = prec + 8;
        return Interval { lo: dyadic_floor(&e.hi.recip(), wp), hi: dyadic_ceil(&e.lo.recip(), wp) };
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut s = 0u32;
    let mut r = x.clone();
    while r > half {
        r /= BigRational::from_integer(2.into());
        s += 1;
    }
    let wp = prec + s + 16;
    let one = BigInt::one() << wp;
    let (rl, ru) = (fixed_floor(&r, wp), fixed_ceil(&r, wp));

    // Taylor series, all terms positive; tail after the last term is at
    // most twice the next term because r / (k + 1) <= 1/2
    let mut lo = one.clone();
    let mut hi = one.clone();
    let mut tl = one.clone();
    let mut tu = one;
    let mut k = 1u64;
    while !tu.is_zero() {
        tl = ((&tl * &rl) >> wp) / k;
        tu = shr_ceil(&tu * &ru, wp);
        tu = (&tu + k - 1u32) / k;
        lo += &tl;
        hi += &tu;
        k += 1;
        if tu <= BigInt::one() {
            hi += 2u32;
            break;
        }
    }
    hi += &tu * 2u32;
    for _ in 0..s {
        lo = (&lo * &lo) >> wp;
        hi = shr_ceil(&hi * &hi, wp);
    }
    Interval { lo: from_fixed(lo, wp), hi: from_fixed(hi, wp) }
}

/// `2 atanh(z)` for `0 <= z <= 1/3`, as fixed-point bounds at `wp` bits.
fn two_atanh(z: &BigRational, wp: u32) -> (BigInt, BigInt) {
    let (zl, zu) = (fixed_floor(z, wp), fixed_ceil(z, wp));
    let z2l = (&zl * &zl) >> wp;
    let z2u = shr_ceil(&zu * &zu, wp);
    let mut pl = zl;
    let mut pu = zu;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut j = 0u64;
    loop {
        let d = 2 * j + 1;
        let tl = &pl / d;
        let tu = (&pu + d - 1u32) / d;
        lo += tl;
        hi += &tu;
        if tu <= BigInt::one() {
            // geometric tail with ratio z^2 <= 1/9
            hi += &tu * 2u32 + 2u32;
            break;
        }
        pl = (&pl * &z2l) >> wp;
        pu = shr_ceil(&pu * &z2u, wp);
        j += 1;
    }
    (lo * 2u32, hi * 2u32)
}

fn ln2(wp: u32) -> (BigInt, BigInt) {
    two_atanh(&BigRational::new(1.into(), 3.into()), wp)
}

/// Enclosure of `ln(x)` for `x > 0`.
pub fn ln_bounds(x: &BigRational, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::pre("ln needs a positive argument"));
    }
    if x.is_one() {
        return Ok(Interval::point(BigRational::zero()));
    }
    if x < &BigRational::one() {
        let l = ln_bounds(&x.recip(), prec)?;
        return Ok(Interval { lo: -l.hi, hi: -l.lo });
    }
    // x = 2^k * y with y in [1, 2)
    let num_bits = x.numer().bits() as i64;
    let den_bits = x.denom().bits() as i64;
    let mut k = (num_bits - den_bits - 1).max(0) as u64;
    let two = BigRational::from_integer(2.into());
    let mut y = x / BigRational::from_integer(BigInt::one() << k);
    while y >= two {
        y /= &two;
        k += 1;
    }
    let wp = prec + 64 - (k.leading_zeros()).min(64) + 8;
    let z = (&y - BigRational::one()) / (&y + BigRational::one());
    let (yl, yu) = two_atanh(&z, wp);
    let (l2l, l2u) = ln2(wp);
    Ok(Interval { lo: from_fixed(yl + l2l * k, wp), hi: from_fixed(yu + l2u * k, wp) })
}

/// Certified comparison of an integer with `exp(x)`, raising precision until
/// the enclosure separates. `exp(x)` is irrational for rational `x != 0`,
/// so this terminates unless the ladder is exhausted.
pub fn compare_with_exp(d: &BigUint, x: &BigRational) -> Result<Ordering> {
    let dv = BigRational::from_integer(BigInt::from(d.clone()));
    for prec in PRECISION_LADDER {
        if let Some(o) = exp_bounds(x, prec).cmp_rational(&dv) {
            return Ok(o.reverse());
        }
    }
    Err(Error::SearchExhausted { what: "precision for exp comparison".into(), bound: 4096 })
}

/// Certified comparison of an integer with `exp(exp(x))`.
pub fn compare_with_exp_exp(d: &BigUint, x: &BigRational) -> Result<Ordering> {
    let dv = BigRational::from_integer(BigInt::from(d.clone()));
    for prec in PRECISION_LADDER {
        if let Some(o) = exp_bounds(x, prec).exp(prec).cmp_rational(&dv) {
            return Ok(o.reverse());
        }
    }
    Err(Error::SearchExhausted { what: "precision for exp comparison".into(), bound: 4096 })
}
