//! Prime generation and primality.
//!
//! Small primes come from a shared, growable sieve. Primality of `u64` values
//! is decided deterministically (trial division, then strong-pseudoprime
//! tests on the first twelve prime bases, which is exact below 2^64).
//! Arbitrary-size integers use random bases from a fixed seed, so the answer
//! is reproducible but only probabilistic; callers flag such results.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

static SIEVE: RwLock<Vec<u64>> = RwLock::new(Vec::new());

fn sieve_up_to(limit: u64) -> Vec<u64> {
    let limit = limit.max(2) as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn ensure_count(count: usize) {
    if SIEVE.read().unwrap().len() >= count {
        return;
    }
    let mut guard = SIEVE.write().unwrap();
    let mut limit = (guard.last().copied().unwrap_or(64)).max(64);
    while guard.len() < count {
        limit *= 2;
        *guard = sieve_up_to(limit);
    }
}

/// The `i`-th prime, zero-based: `nth_prime(0) == 2`.
pub fn nth_prime(i: usize) -> u64 {
    ensure_count(i + 1);
    SIEVE.read().unwrap()[i]
}

/// Zero-based position of a prime in the sequence of primes, if `p` is prime.
pub fn prime_index(p: u64) -> Option<usize> {
    if !is_prime(p) {
        return None;
    }
    let mut count = 64;
    loop {
        ensure_count(count);
        let guard = SIEVE.read().unwrap();
        if guard.last().copied().unwrap_or(0) >= p {
            return guard.binary_search(&p).ok();
        }
        drop(guard);
        count *= 2;
    }
}

/// Iterator over all primes in increasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    (0..).map(nth_prime)
}

/// Primes `p` with `lo <= p`, ascending; falls back to Miller-Rabin beyond
/// the sieve.
pub fn primes_from(lo: u64) -> impl Iterator<Item = u64> {
    let mut next = lo.max(2);
    std::iter::from_fn(move || {
        while !is_prime(next) {
            next = next.checked_add(1)?;
        }
        let p = next;
        next = next.checked_add(1)?;
        Some(p)
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Outcome of a primality test on an arbitrary-size integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Prime,
    ProbablePrime,
    Composite,
}

impl Primality {
    pub fn is_prime_like(self) -> bool {
        self != Primality::Composite
    }
}

/// Primality of an arbitrary non-negative integer. Values that fit in `u64`
/// get the deterministic answer.
pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime(small) { Primality::Prime } else { Primality::Composite };
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // fixed LCG for reproducible witnesses
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    'rounds: for round in 0..32 {
        let a = if round < MR_BASES.len() {
            BigUint::from(MR_BASES[round])
        } else {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            BigUint::from(state) % (&n_minus_1 - 2u32) + 2u32
        };
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'rounds;
            }
        }
        return Primality::Composite;
    }
    Primality::ProbablePrime
}

/// Smallest prime `>= n` (for arbitrary-size `n`), with the primality grade
/// of the returned value.
pub fn next_prime_big(n: &BigUint) -> (BigUint, Primality) {
    let mut candidate = n.clone().max(BigUint::from(2u32));
    loop {
        let grade = primality(&candidate);
        if grade.is_prime_like() {
            return (candidate, grade);
        }
        candidate += 1u32;
    }
}

/// Product of all primes `<= m` (empty product is 1).
pub fn primorial(m: u64) -> BigUint {
    primes().take_while(|&p| p <= m).fold(BigUint::one(), |acc, p| acc * p)
}

/// Smallest prime that does not divide `x`. For `x == 0` every prime divides,
/// which is rejected by the caller's precondition.
pub fn least_prime_not_dividing(x: &BigInt) -> u64 {
    assert!(!x.is_zero(), "every prime divides 0");
    primes().find(|&p| !(x % p).is_zero()).expect("primes are unbounded")
}

/// Prime factorisation of a `u64` as ascending `(prime, multiplicity)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in primes() {
        if p * p > n {
            break;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of a non-zero big integer, by trial division up to
/// `trial_limit`; the cofactor left over (if not 1) is returned separately.
pub fn small_prime_divisors(x: &BigInt, trial_limit: u64) -> (Vec<u64>, BigUint) {
    let mut rest = x.magnitude().clone();
    let mut out = Vec::new();
    for p in primes().take_while(|&p| p <= trial_limit) {
        if rest.is_one() {
            break;
        }
        if (&rest % p).is_zero() {
            out.push(p);
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
    }
    (out, rest)
}

/// 2-adic (or any prime) valuation of a non-zero integer.
pub fn valuation(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero());
    let mut v = 0;
    let mut rest = x.clone();
    let p = BigInt::from(p);
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

#[allow(dead_code)]
pub(crate) fn to_bigint(x: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x)
}
