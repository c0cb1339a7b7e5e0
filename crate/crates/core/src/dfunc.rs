//! The functions `d : Z -> Z` that define the cyclic-centre quotients `G_d`
//! (`c_i = c_1^{d(i)}`), and windowed periodicity certificates for `d mod q`.
//!
//! Two families are built on the 3-adic valuation of the argument: for
//! `i = +-3^j (mod 3^{j+1})` the value is `+-h(j)` for some height function
//! `h`. [`HallD`] takes `h(j) = n(j)` built from a pluggable prime function,
//! [`FastGrowthD`] takes `h(j) = lcm{1..f^-1(j)}`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::primes;

/// Offset into the primes used for "silent" values of the stand-in prime
/// functions: `p_{i + offset}` never divides `n0(i)`.
const SILENT_OFFSET: usize = 10_000;

/// Computable prime-valued function standing in for an enumeration of the
/// halting set. Every stand-in is total and deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeFunction {
    /// `P(i) = p_i`, which never divides `n0(i)`, so `P' = 1` everywhere.
    Trivial,
    /// `P(i) = p_{i - lag}` for `i >= lag`: every prime is eventually hit,
    /// prime `p_k` at index `k + lag`.
    KthPrime { lag: usize },
    /// Explicit `(index, prime)` entries; every other index is silent.
    Scripted { entries: Vec<(u64, u64)> },
}

impl PrimeFunction {
    pub fn eval(&self, i: u64) -> u64 {
        let i_us = i as usize;
        match self {
            PrimeFunction::Trivial => primes::nth_prime(i_us),
            PrimeFunction::KthPrime { lag } => {
                if i_us >= *lag {
                    primes::nth_prime(i_us - lag)
                } else {
                    primes::nth_prime(i_us + SILENT_OFFSET)
                }
            }
            PrimeFunction::Scripted { entries } => entries
                .iter()
                .find(|(j, _)| *j == i)
                .map(|(_, p)| *p)
                .unwrap_or_else(|| primes::nth_prime(i_us + SILENT_OFFSET)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let PrimeFunction::Scripted { entries } = self {
            for (j, p) in entries {
                if !primes::is_prime(*p) {
                    return Err(Error::Config(format!("scripted value {p} at {j} is not prime")));
                }
            }
            let mut keys: Vec<u64> = entries.iter().map(|e| e.0).collect();
            keys.sort_unstable();
            if keys.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Config("scripted prime function repeats an index".into()));
            }
        }
        Ok(())
    }

    /// `P'(i)`: `P(i)` when it divides `n0(i)` and was not produced before,
    /// else 1.
    pub fn reduced(&self, i: u64) -> u64 {
        let p = self.eval(i);
        // n0(i) is the product of the first i primes
        let divides_n0 = primes::prime_index(p).is_some_and(|k| (k as u64) < i);
        if !divides_n0 || (0..i).any(|j| self.eval(j) == p) {
            1
        } else {
            p
        }
    }

    /// True when `P'(j) != p` for every `j > bound`; always decidable for the
    /// shipped stand-ins.
    pub fn silent_after(&self, p: u64, bound: u64) -> bool {
        match self {
            PrimeFunction::Trivial => true,
            PrimeFunction::KthPrime { lag } => match primes::prime_index(p) {
                None => true,
                Some(k) => {
                    let hit = (k + lag) as u64;
                    hit <= bound || self.reduced(hit) != p
                }
            },
            PrimeFunction::Scripted { entries } => entries
                .iter()
                .filter(|(j, _)| *j > bound)
                .all(|(j, _)| self.reduced(*j) != p),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            PrimeFunction::Trivial => "trivial".into(),
            PrimeFunction::KthPrime { lag } => format!("kth_prime(lag={lag})"),
            PrimeFunction::Scripted { entries } => {
                let parts: Vec<String> = entries.iter().map(|(j, p)| format!("{j}:{p}")).collect();
                format!("scripted({})", parts.join(","))
            }
        }
    }
}

/// Which power is applied to `n0(i) / P'(i)` when forming `n(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentConvention {
    /// `n(i) = (n0(i)/P'(i))^i`.
    J,
    /// `n(i) = (n0(i)/P'(i))^(i+1)`; gives `d(3) = 2^2, d(9) = 6^3, d(27) = 30^4`.
    #[default]
    JPlusOne,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HallD {
    pub prime_fn: PrimeFunction,
    #[serde(default)]
    pub convention: ExponentConvention,
    #[serde(skip)]
    cache: Arc<Mutex<BTreeMap<u32, BigInt>>>,
}

impl HallD {
    pub fn new(prime_fn: PrimeFunction, convention: ExponentConvention) -> Self {
        HallD { prime_fn, convention, cache: Arc::default() }
    }

    /// `n0(i)`: product of the first `i` primes.
    pub fn n0(i: u32) -> BigInt {
        (0..i as usize).fold(BigInt::one(), |acc, k| acc * primes::nth_prime(k))
    }

    pub fn n(&self, i: u32) -> BigInt {
        if let Some(v) = self.cache.lock().unwrap().get(&i) {
            return v.clone();
        }
        let base = Self::n0(i) / self.prime_fn.reduced(i as u64);
        let exp = match self.convention {
            ExponentConvention::J => i,
            ExponentConvention::JPlusOne => i + 1,
        };
        let v = num_traits::pow(base, exp as usize);
        self.cache.lock().unwrap().insert(i, v.clone());
        v
    }

    pub fn eval(&self, i: i64) -> BigInt {
        three_adic(i, |j| self.n(j))
    }
}

/// A monotone function `N -> N` for the fast-growth construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthFn {
    Identity,
    Affine { mul: u64, add: u64 },
    Power { exp: u32 },
    /// `floor(e^m)`.
    ExpFloor,
    Constant { value: u64 },
}

impl GrowthFn {
    /// Saturating evaluation.
    pub fn eval(&self, m: u64) -> u128 {
        match *self {
            GrowthFn::Identity => m as u128,
            GrowthFn::Affine { mul, add } => (mul as u128).saturating_mul(m as u128).saturating_add(add as u128),
            GrowthFn::Power { exp } => (m as u128).saturating_pow(exp),
            GrowthFn::ExpFloor => {
                let v = (m as f64).exp();
                if v >= u128::MAX as f64 { u128::MAX } else { v.floor() as u128 }
            }
            GrowthFn::Constant { value } => value as u128,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        match *self {
            GrowthFn::Affine { mul, .. } => mul > 0,
            GrowthFn::Power { exp } => exp > 0,
            GrowthFn::Constant { .. } => false,
            _ => true,
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            GrowthFn::Identity => "id".into(),
            GrowthFn::Affine { mul, add } => format!("{mul}m+{add}"),
            GrowthFn::Power { exp } => format!("m^{exp}"),
            GrowthFn::ExpFloor => "floor(exp)".into(),
            GrowthFn::Constant { value } => format!("const({value})"),
        }
    }
}

/// Default ceiling for [`semi_inverse`] searches.
pub const SEMI_INVERSE_BOUND: u64 = 1 << 40;

/// `f^-1(n) = min{m in N : f(m) >= n}` by galloping then bisection.
pub fn semi_inverse(f: &GrowthFn, n: u128, search_bound: u64) -> Result<u64> {
    if f.eval(0) >= n {
        return Ok(0);
    }
    let exhausted = || Error::SearchExhausted {
        what: format!("semi-inverse of {} at {n}", f.descriptor()),
        bound: search_bound,
    };
    let mut lo = 0u64; // f(lo) < n
    let mut hi = 1u64;
    while f.eval(hi) < n {
        if hi >= search_bound {
            return Err(exhausted());
        }
        lo = hi;
        hi = hi.saturating_mul(2).min(search_bound);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f.eval(mid) >= n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FastGrowthD {
    pub f: GrowthFn,
}

impl FastGrowthD {
    pub fn new(f: GrowthFn) -> Result<Self> {
        if !f.is_unbounded() {
            return Err(Error::Config(format!("growth function {} is bounded", f.descriptor())));
        }
        Ok(FastGrowthD { f })
    }

    pub fn height(&self, j: u32) -> BigInt {
        let m = semi_inverse(&self.f, j as u128, SEMI_INVERSE_BOUND).expect("f is unbounded");
        lcm_upto(m)
    }

    pub fn eval(&self, i: i64) -> BigInt {
        three_adic(i, |j| self.height(j))
    }
}

/// `lcm{1, ..., m}`, with the empty lcm equal to 1.
pub fn lcm_upto(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

pub fn nu3(i: i64) -> u32 {
    assert!(i != 0);
    let mut v = 0;
    let mut x = i;
    while x % 3 == 0 {
        x /= 3;
        v += 1;
    }
    v
}

fn three_adic(i: i64, height: impl Fn(u32) -> BigInt) -> BigInt {
    if i == 0 {
        return BigInt::zero();
    }
    let j = nu3(i);
    let unit = (i / 3i64.pow(j)).rem_euclid(3);
    let h = height(j);
    if unit == 1 { h } else { -h }
}

/// A `d`-function, selectable by name in configuration files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DFunction {
    Hall(HallD),
    FastGrowth(FastGrowthD),
    /// `d(i) = i`; periodic modulo no `q >= 2`.
    Identity,
    /// Periodic with the given values on `0..len` (e.g. `[0, 1, -1]`).
    Periodic { values: Vec<i64> },
    /// Constant zero; not a valid centre map but a useful control.
    Zero,
}

impl DFunction {
    pub fn hall(prime_fn: PrimeFunction, convention: ExponentConvention) -> Self {
        DFunction::Hall(HallD::new(prime_fn, convention))
    }

    pub fn hall_trivial() -> Self {
        Self::hall(PrimeFunction::Trivial, ExponentConvention::JPlusOne)
    }

    pub fn fast_growth(f: GrowthFn) -> Result<Self> {
        Ok(DFunction::FastGrowth(FastGrowthD::new(f)?))
    }

    pub fn eval(&self, i: i64) -> BigInt {
        match self {
            DFunction::Hall(h) => h.eval(i),
            DFunction::FastGrowth(g) => g.eval(i),
            DFunction::Identity => BigInt::from(i),
            DFunction::Periodic { values } => {
                BigInt::from(values[i.rem_euclid(values.len() as i64) as usize])
            }
            DFunction::Zero => BigInt::zero(),
        }
    }

    /// Checks the centre-map axioms (`d(1) = 1`, antisymmetry) on `[-window, window]`.
    pub fn validate_center_map(&self, window: i64) -> Result<()> {
        if let DFunction::Periodic { values } = self {
            if values.is_empty() {
                return Err(Error::Config("periodic d needs at least one value".into()));
            }
        }
        if let DFunction::Hall(h) = self {
            h.prime_fn.validate()?;
        }
        if self.eval(1) != BigInt::one() {
            return Err(Error::Config(format!("{}: d(1) != 1", self.descriptor())));
        }
        for i in 0..=window {
            if self.eval(-i) != -self.eval(i) {
                return Err(Error::Config(format!("{}: not antisymmetric at {i}", self.descriptor())));
            }
        }
        Ok(())
    }

    pub fn descriptor(&self) -> String {
        match self {
            DFunction::Hall(h) => format!(
                "hall({},{:?})",
                h.prime_fn.descriptor(),
                h.convention
            ),
            DFunction::FastGrowth(g) => format!("fast_growth({})", g.f.descriptor()),
            DFunction::Identity => "identity".into(),
            DFunction::Periodic { values } => format!("periodic{values:?}"),
            DFunction::Zero => "zero".into(),
        }
    }
}

impl PartialEq for DFunction {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor() == other.descriptor()
    }
}

impl Eq for DFunction {}

/// Windowed periodicity certificate: `d(i + period) = d(i) (mod q)` for every
/// `i` in `[0, window)`, with `window = 3 * period`. It is evidence, not a
/// proof of global periodicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodCertificate {
    pub q: u64,
    pub period: u64,
    pub window: u64,
}

pub const WINDOW_MULTIPLIER: u64 = 3;

/// Residues of `d` modulo `q` on `[0, len)`, grown on demand.
struct ResidueTable<'a> {
    d: &'a DFunction,
    q: BigInt,
    values: Vec<u64>,
}

impl ResidueTable<'_> {
    fn get(&mut self, i: u64) -> u64 {
        while self.values.len() as u64 <= i {
            let k = self.values.len() as i64;
            let r = self.d.eval(k).mod_floor(&self.q).to_u64().unwrap();
            self.values.push(r);
        }
        self.values[i as usize]
    }
}

/// Least period `T <= search_bound` of `d mod q`, certified on the window
/// `[0, 3T)`. `Ok(None)` when no period up to the bound certifies.
pub fn period_mod(d: &DFunction, q: u64, search_bound: u64) -> Result<Option<PeriodCertificate>> {
    if q < 2 {
        return Err(Error::pre("modulus q must be >= 2"));
    }
    let mut table = ResidueTable { d, q: BigInt::from(q), values: Vec::new() };
    for t in 1..=search_bound {
        let window = WINDOW_MULTIPLIER * t;
        if (0..window).all(|i| table.get(i + t) == table.get(i)) {
            return Ok(Some(PeriodCertificate { q, period: t, window }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityReport {
    pub d: String,
    pub search_bound: u64,
    pub entries: Vec<(u64, Option<PeriodCertificate>)>,
    /// Every tested modulus certified periodic (evidence for conjugacy
    /// separability of `G_d`).
    pub consistent_with_conjugacy_separable: bool,
    /// Some tested modulus certified periodic (evidence for residual
    /// finiteness); the criterion needs infinitely many.
    pub consistent_with_residually_finite: bool,
}

pub fn check_separability_criteria(
    d: &DFunction,
    q_list: &[u64],
    search_bound: u64,
) -> Result<SeparabilityReport> {
    let mut entries = Vec::with_capacity(q_list.len());
    for &q in q_list {
        entries.push((q, period_mod(d, q, search_bound)?));
    }
    let certified = entries.iter().filter(|(_, c)| c.is_some()).count();
    Ok(SeparabilityReport {
        d: d.descriptor(),
        search_bound,
        consistent_with_conjugacy_separable: !entries.is_empty() && certified == entries.len(),
        consistent_with_residually_finite: certified > 0,
        entries,
    })
}
